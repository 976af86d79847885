//! Exhaustive bounded searches used to cross-check the exact algorithms.

use std::collections::VecDeque;

use crate::fgroup::{Letter, Word};
use crate::garlands::TreeGarlandClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_conjugator_length: usize,
    pub max_power: i64,
}

impl SearchBounds {
    pub fn new(max_conjugator_length: usize, max_power: i64) -> SearchBounds {
        assert!(
            max_conjugator_length >= 1 && max_power >= 1,
            "bounds must be positive"
        );
        SearchBounds {
            max_conjugator_length,
            max_power,
        }
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds::new(12, 12)
    }
}

fn alphabet(rank: u32) -> Vec<Letter> {
    (1..=rank.max(1))
        .flat_map(|g| [Letter::new(g, true), Letter::new(g, false)])
        .collect()
}

/// Every reduced `c` with `|c| <= max_len` and `c u c^-1 = v`, built right to
/// left so that `c u c^-1` is updated in constant time per letter.
fn conjugators_within(u: &Word, v: &Word, rank: u32, max_len: usize) -> Vec<Word> {
    struct Search<'a> {
        letters: Vec<Letter>,
        target: &'a [Letter],
        max_len: usize,
        z: VecDeque<Letter>,
        suffix: Vec<Letter>,
        found: Vec<Word>,
    }

    impl Search<'_> {
        fn check(&mut self) {
            if self.z.len() == self.target.len() && self.z.iter().eq(self.target.iter()) {
                let c: Vec<Letter> = self.suffix.iter().rev().copied().collect();
                self.found.push(Word::normalize(c));
            }
        }

        fn run(&mut self) {
            self.check();
            if self.suffix.len() == self.max_len {
                return;
            }
            for i in 0..self.letters.len() {
                let x = self.letters[i];
                // The next letter to the left of the suffix must not cancel it.
                if self.suffix.last() == Some(&x.inverse()) {
                    continue;
                }
                let front_popped = self.z.front() == Some(&x.inverse());
                if front_popped {
                    self.z.pop_front();
                } else {
                    self.z.push_front(x);
                }
                let back_popped = self.z.back() == Some(&x);
                if back_popped {
                    self.z.pop_back();
                } else {
                    self.z.push_back(x.inverse());
                }
                self.suffix.push(x);
                self.run();
                self.suffix.pop();
                if back_popped {
                    self.z.push_back(x);
                } else {
                    self.z.pop_back();
                }
                if front_popped {
                    self.z.push_front(x.inverse());
                } else {
                    self.z.pop_front();
                }
            }
        }
    }

    let mut s = Search {
        letters: alphabet(rank),
        target: v.letters(),
        max_len,
        z: u.letters().iter().copied().collect(),
        suffix: Vec::new(),
        found: Vec::new(),
    };
    s.run();
    s.found
}

/// The shortest, then lexicographically least, reduced `c` with
/// `|c| <= bound` and `c u c^-1 = v`.
pub fn brute_conjugator_search(u: &Word, v: &Word, bounds: &SearchBounds) -> Option<Word> {
    let rank = u.max_generator().max(v.max_generator());
    // Deepen one letter at a time so that short answers stop the search.
    (0..=bounds.max_conjugator_length).find_map(|len| {
        conjugators_within(u, v, rank, len)
            .into_iter()
            .min_by(|a, b| a.letters().cmp(b.letters()))
    })
}

/// Every reduced `c` with `|c| <= max_conjugator_length` commuting with `u`.
pub fn brute_centralizer(u: &Word, bounds: &SearchBounds) -> Vec<Word> {
    conjugators_within(u, u, u.max_generator(), bounds.max_conjugator_length)
}

/// Some `|i| <= max_power` with `w^i u w^-i = v`, trying `0, 1, -1, 2, ...`.
pub fn brute_power_solve(w: &Word, u: &Word, v: &Word, bounds: &SearchBounds) -> Option<i64> {
    (0..=bounds.max_power)
        .flat_map(|i| if i == 0 { vec![0] } else { vec![i, -i] })
        .find(|&i| &u.conjugate_by(&w.pow(i)) == v)
}

/// Searches for a global conjugator of length at most the bound and slide
/// powers at most the bound, per component, turning `c1` into `c2`.
pub fn brute_tree_class_equal(
    c1: &TreeGarlandClass,
    c2: &TreeGarlandClass,
    bounds: &SearchBounds,
) -> bool {
    if c1.graph() != c2.graph() {
        return false;
    }
    let rank = c1
        .labels()
        .iter()
        .chain(c2.labels())
        .map(Word::max_generator)
        .max()
        .unwrap_or(1);
    c1.graph().components().iter().all(|comp| {
        let r = comp[0];
        conjugators_within(
            &c1.labels()[r - 1],
            &c2.labels()[r - 1],
            rank,
            bounds.max_conjugator_length,
        )
        .iter()
        .any(|g| subtree_matches(c1, c2, r, 0, g, bounds))
    })
}

fn subtree_matches(
    c1: &TreeGarlandClass,
    c2: &TreeGarlandClass,
    v: usize,
    from: usize,
    h: &Word,
    bounds: &SearchBounds,
) -> bool {
    let xv = &c1.labels()[v - 1];
    c1.graph()
        .neighbors(v)
        .into_iter()
        .filter(|&c| c != from)
        .all(|c| {
            (-bounds.max_power..=bounds.max_power).any(|k| {
                let hc = h.concat(&xv.pow(k));
                c1.labels()[c - 1].conjugate_by(&hc) == c2.labels()[c - 1]
                    && subtree_matches(c1, c2, c, v, &hc, bounds)
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn conjugator_search_examples() {
        let b = SearchBounds::default();
        // bb rotates BBa into aBB, but the single letter a already does.
        assert_eq!(
            brute_conjugator_search(&w("BBa"), &w("aBB"), &b),
            Some(w("a"))
        );
        assert_eq!(w("BBa").conjugate_by(&w("bb")), w("aBB"));
        assert_eq!(brute_conjugator_search(&w("a"), &w("b"), &b), None);
        assert_eq!(
            brute_conjugator_search(&w("ab"), &w("ab"), &b),
            Some(Word::identity())
        );
        assert_eq!(
            brute_conjugator_search(&w("a"), &w("bbaBB"), &b),
            Some(w("bb"))
        );
        // Shortest first: a itself commutes with a, so length 0 wins.
        assert_eq!(
            brute_conjugator_search(&w("a"), &w("a"), &b),
            Some(Word::identity())
        );
    }

    #[test]
    fn deque_updates_match_direct_conjugation() {
        let u = w("abAB");
        for c in conjugators_within(&u, &w("abAB"), 2, 5) {
            assert_eq!(u.conjugate_by(&c), u);
        }
        let found = conjugators_within(&w("a"), &w("a"), 2, 4);
        let mut lens: Vec<usize> = found.iter().map(Word::len).collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3, 3, 4, 4]);
        assert_eq!(
            brute_centralizer(&w("abab"), &SearchBounds::new(4, 1)).len(),
            5
        );
    }

    #[test]
    fn power_search_examples() {
        let b = SearchBounds::default();
        assert_eq!(brute_power_solve(&w("a"), &w("b"), &w("abA"), &b), Some(1));
        assert_eq!(
            brute_power_solve(&w("aBB"), &w("bbaBBB"), &w("Ba"), &b),
            None
        );
        assert_eq!(brute_power_solve(&w("ab"), &w("b"), &w("b"), &b), Some(0));
    }

    #[test]
    fn tree_search_examples() {
        let b = SearchBounds::new(8, 6);
        let p = |u: &str, v: &str| TreeGarlandClass::pair(w(u), w(v)).unwrap();
        assert!(brute_tree_class_equal(&p("BaB", "aB"), &p("aBB", "aB"), &b));
        assert!(!brute_tree_class_equal(
            &p("BBa", "aB"),
            &p("aBB", "Ba"),
            &b
        ));
        assert!(brute_tree_class_equal(&p("ab", "b"), &p("ab", "b"), &b));
    }
}
