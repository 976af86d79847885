//! Free group words: reduction, cyclic words, conjugacy witnesses,
//! primitive roots and the power-conjugation equation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A signed generator. Positive values are generators `a_i`, negative
/// values their inverses.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: u32, positive: bool) -> Letter {
        assert!(generator >= 1, "generator index must be at least 1");
        let g = generator as i32;
        Letter(if positive { g } else { -g })
    }

    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Position in the order a1 < A1 < a2 < A2 < ...
    pub fn order_key(self) -> u32 {
        2 * (self.generator() - 1) + u32::from(!self.is_positive())
    }

    fn to_char(self) -> Option<char> {
        let g = self.generator();
        if g > 26 {
            return None;
        }
        let base = if self.is_positive() { b'a' } else { b'A' };
        Some((base + (g - 1) as u8) as char)
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'a'..='z' => Some(Letter::new(c as u32 - 'a' as u32 + 1, true)),
            'A'..='Z' => Some(Letter::new(c as u32 - 'A' as u32 + 1, false)),
            _ => None,
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_char() {
            Some(c) => write!(f, "{c}"),
            None if self.is_positive() => write!(f, "a{}", self.generator()),
            None => write!(f, "a{}^-1", self.generator()),
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn normalize<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut letters: Vec<Letter> = Vec::new();
        for x in raw {
            if letters.last() == Some(&x.inverse()) {
                letters.pop();
            } else {
                letters.push(x);
            }
        }
        Word { letters }
    }

    pub fn letter(x: Letter) -> Word {
        Word { letters: vec![x] }
    }

    /// The generator `a_g` as a one-letter word.
    pub fn generator(g: u32) -> Word {
        Word::letter(Letter::new(g, true))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let a = &self.letters;
        let b = &other.letters;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word { letters }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|x| x.inverse()).collect(),
        }
    }

    /// `c * self * c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.concat(self).concat(&c.invert())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// The largest generator index used, or 0 for the identity.
    pub fn max_generator(&self) -> u32 {
        self.letters
            .iter()
            .map(|x| x.generator())
            .max()
            .unwrap_or(0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len].to_vec(),
        }
    }

    /// Abelianization: exponent sum per generator, indexed from generator 1.
    pub fn abelianization(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for x in &self.letters {
            let g = x.generator() as usize;
            if g <= rank {
                v[g - 1] += if x.is_positive() { 1 } else { -1 };
            }
        }
        v
    }

    /// Splits `self = s * c * s^-1` with `c` cyclically reduced (not rotated).
    fn split_cyclic(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let shell = Word {
            letters: self.letters[..k].to_vec(),
        };
        let core = Word {
            letters: self.letters[k..n - k].to_vec(),
        };
        (shell, core)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    if letters.iter().all(|x| x.generator() <= 26) {
        for x in letters {
            write!(f, "{x:?}")?;
        }
        Ok(())
    } else {
        let tokens: Vec<String> = letters
            .iter()
            .map(|x| {
                if x.is_positive() {
                    format!("a{}", x.generator())
                } else {
                    format!("a{}^-1", x.generator())
                }
            })
            .collect();
        write!(f, "{}", tokens.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts compact letters (`aBB`), explicit tokens (`a1 a2^-1`), a mix
    /// of both separated by spaces, and `1` for the identity.
    fn from_str(s: &str) -> Result<Word> {
        let mut raw = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            if let Some(rest) = token
                .strip_prefix('a')
                .filter(|r| r.chars().next().is_some_and(|c| c.is_ascii_digit()))
            {
                let (num, exp) = match rest.split_once('^') {
                    Some((n, e)) => (n, e),
                    None => (rest, "1"),
                };
                let g: u32 = num
                    .parse()
                    .ok()
                    .filter(|&g| g >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad generator in token `{token}`")))?;
                let e: i64 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in token `{token}`")))?;
                let x = Letter::new(g, e > 0);
                for _ in 0..e.unsigned_abs() {
                    raw.push(x);
                }
            } else {
                for c in token.chars() {
                    let x = Letter::from_char(c).ok_or_else(|| {
                        Error::Parse(format!("unexpected character `{c}` in word `{s}`"))
                    })?;
                    raw.push(x);
                }
            }
        }
        Ok(Word::normalize(raw))
    }
}

/// A cyclically reduced word stored in its lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word {
            letters: self.letters.clone(),
        }
    }

    /// Letter at a cyclic position.
    pub fn at(&self, i: i64) -> Letter {
        let n = self.letters.len() as i64;
        self.letters[i.rem_euclid(n) as usize]
    }

    /// The rotation starting at position `p`: `P^-1 * w * P` where `P` is the
    /// length-`p` prefix.
    pub fn rotation(&self, p: usize) -> Word {
        let n = self.letters.len();
        let p = p % n.max(1);
        let mut letters = self.letters[p..].to_vec();
        letters.extend_from_slice(&self.letters[..p]);
        Word { letters }
    }

    pub fn inverse(&self) -> CyclicWord {
        conjugacy_class(&self.as_word().invert())
    }

    /// Builds the canonical rotation of a cyclically reduced word.
    fn from_cyclically_reduced(w: &[Letter]) -> (CyclicWord, usize) {
        let k = least_rotation(w);
        let mut letters = w[k..].to_vec();
        letters.extend_from_slice(&w[..k]);
        (CyclicWord { letters }, k)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

fn least_rotation(w: &[Letter]) -> usize {
    let n = w.len();
    (0..n)
        .min_by(|&i, &j| {
            (0..n)
                .map(|t| w[(i + t) % n].cmp(&w[(j + t) % n]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
                .then(i.cmp(&j))
        })
        .unwrap_or(0)
}

/// `u = shell * core * shell^-1` with `core` canonical.
pub fn cyclic_reduce(u: &Word) -> (CyclicWord, Word) {
    let (s, c) = u.split_cyclic();
    if c.is_empty() {
        return (CyclicWord::default(), Word::identity());
    }
    let (core, k) = CyclicWord::from_cyclically_reduced(&c.letters);
    // c = P * core * P^-1 with P the first k letters of c.
    let shell = s.concat(&c.prefix(k));
    (core, shell)
}

pub fn conjugacy_class(u: &Word) -> CyclicWord {
    cyclic_reduce(u).0
}

/// A conjugator `base` with `base * u * base^-1 = v`; every conjugator is
/// `base * root^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub base: Word,
    pub root: Word,
}

pub fn primitive_root(u: &Word) -> Result<(Word, u32)> {
    if u.is_identity() {
        return Err(Error::TrivialInput("primitive_root"));
    }
    let (s, c) = u.split_cyclic();
    let n = c.len();
    let d = (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| c.letters[i] == c.letters[i - d]))
        .unwrap_or(n);
    let root = c.prefix(d).conjugate_by(&s);
    Ok((root, (n / d) as u32))
}

pub fn conjugator(u: &Word, v: &Word) -> Result<Option<ConjugacyWitness>> {
    if u.is_identity() || v.is_identity() {
        return Err(Error::TrivialInput("conjugator"));
    }
    let (s1, c1) = u.split_cyclic();
    let (s2, c2) = v.split_cyclic();
    if c1.len() != c2.len() {
        return Ok(None);
    }
    let n = c1.len();
    let Some(k) = (0..n).find(|&k| (0..n).all(|i| c1.letters[(k + i) % n] == c2.letters[i])) else {
        return Ok(None);
    };
    // c2 = P^-1 c1 P with P = c1[..k], so v = (s2 P^-1 s1^-1) u (s2 P^-1 s1^-1)^-1.
    let base = s2.concat(&c1.prefix(k).invert()).concat(&s1.invert());
    let (root, _) = primitive_root(u)?;
    Ok(Some(ConjugacyWitness { base, root }))
}

/// The set of `n` with `t^n x t^-n = z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerSolutions {
    None,
    Unique(i64),
    All,
}

/// If `w` lies in the cyclic group generated by the primitive word `rho`,
/// returns the exponent.
fn exponent_in(w: &Word, rho: &Word) -> Option<i64> {
    if w.is_identity() {
        return Some(0);
    }
    let (r, e) = primitive_root(w).ok()?;
    if &r == rho {
        Some(e as i64)
    } else if r == rho.invert() {
        Some(-(e as i64))
    } else {
        None
    }
}

pub fn power_conjugation_solutions(t: &Word, x: &Word, z: &Word) -> Result<PowerSolutions> {
    if t.is_identity() || x.is_identity() || z.is_identity() {
        return Err(Error::TrivialInput("power_conjugation_solve"));
    }
    let Some(wit) = conjugator(x, z)? else {
        return Ok(PowerSolutions::None);
    };
    let (rho_t, e_t) = primitive_root(t)?;
    let rho_x = wit.root;
    if rho_t == rho_x || rho_t == rho_x.invert() {
        return Ok(if x == z {
            PowerSolutions::All
        } else {
            PowerSolutions::None
        });
    }
    // Solutions t^n lie in base * <rho_x>; at most one element of that coset
    // lies in <rho_t> because the two cyclic groups intersect trivially.
    let mut bound = 2 * (wit.base.len() + rho_x.len() + rho_t.len()) + 8;
    if let Some(w) = conjugator(&rho_x, &rho_t)?.or(conjugator(&rho_x, &rho_t.invert())?) {
        bound += 2 * w.base.len();
    }
    let rho_x_inv = rho_x.invert();
    let mut fwd = wit.base.clone();
    let mut back = wit.base.clone();
    for j in 0..=bound {
        let cands: &[&Word] = if j == 0 { &[&fwd] } else { &[&fwd, &back] };
        for cand in cands {
            if let Some(m) = exponent_in(cand, &rho_t) {
                let e = e_t as i64;
                return Ok(if m % e == 0 {
                    PowerSolutions::Unique(m / e)
                } else {
                    PowerSolutions::None
                });
            }
        }
        fwd = fwd.concat(&rho_x);
        back = back.concat(&rho_x_inv);
    }
    Ok(PowerSolutions::None)
}

/// Some `i` with `w^i u w^-i = v`, preferring `0` when it works.
pub fn power_conjugation_solve(w: &Word, u: &Word, v: &Word) -> Result<Option<i64>> {
    Ok(match power_conjugation_solutions(w, u, v)? {
        PowerSolutions::None => None,
        PowerSolutions::Unique(n) => Some(n),
        PowerSolutions::All => Some(0),
    })
}

/// True when the primitive roots of `u` and `v` are conjugate or
/// inverse-conjugate, i.e. both are powers of one free homotopy class.
pub fn share_root(u: &Word, v: &Word) -> Result<bool> {
    let (ru, _) = primitive_root(u)?;
    let (rv, _) = primitive_root(v)?;
    let cu = conjugacy_class(&ru);
    Ok(cu == conjugacy_class(&rv) || cu == conjugacy_class(&rv.invert()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(w("aAb"), w("b"));
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("abBa").to_string(), "aa");
        assert_eq!(w("a1 a1^-1 a2"), w("b"));
    }

    #[test]
    fn concat_and_invert() {
        assert!(w("ab").concat(&w("BA")).is_identity());
        assert_eq!(w("ab").invert(), w("BA"));
        assert_eq!(w("a").concat(&w("b")), w("ab"));
    }

    #[test]
    fn token_syntax() {
        assert_eq!(w("a1 a2^-2"), w("aBB"));
        assert_eq!(w("a27 a1").to_string(), "a27 a1");
        assert_eq!(w("a2^3"), w("bbb"));
        assert!("a?".parse::<Word>().is_err());
        assert!("a0".parse::<Word>().is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, shell) = cyclic_reduce(&w("baB"));
        assert_eq!(core.as_word(), w("a"));
        assert_eq!(shell, w("b"));
        let (core, shell) = cyclic_reduce(&w("aB"));
        assert_eq!(core.as_word(), w("aB"));
        assert!(shell.is_identity());
        let (core, shell) = cyclic_reduce(&Word::identity());
        assert!(core.is_empty() && shell.is_identity());
        // The order is a < A < b < B, so Ba rotates to aB.
        assert_eq!(conjugacy_class(&w("Ba")).as_word(), w("aB"));
    }

    #[test]
    fn conjugacy_class_examples() {
        assert_eq!(conjugacy_class(&w("BBa")), conjugacy_class(&w("aBB")));
        assert_ne!(conjugacy_class(&w("a")), conjugacy_class(&w("b")));
    }

    #[test]
    fn conjugator_examples() {
        let wit = conjugator(&w("BBa"), &w("aBB")).unwrap().unwrap();
        assert_eq!(wit.base, w("bb"));
        assert_eq!(wit.root, w("BBa"));
        assert!(conjugator(&w("a"), &w("b")).unwrap().is_none());
        let wit = conjugator(&w("abab"), &w("abab")).unwrap().unwrap();
        assert!(wit.base.is_identity());
        assert_eq!(wit.root, w("ab"));
        assert!(matches!(
            conjugator(&Word::identity(), &w("a")),
            Err(Error::TrivialInput(_))
        ));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(&w("aaa")).unwrap(), (w("a"), 3));
        assert_eq!(primitive_root(&w("aBB")).unwrap(), (w("aBB"), 1));
        assert_eq!(primitive_root(&w("abab")).unwrap(), (w("ab"), 2));
        assert_eq!(primitive_root(&w("baaaB")).unwrap(), (w("baB"), 3));
        assert!(primitive_root(&Word::identity()).is_err());
    }

    #[test]
    fn power_conjugation_examples() {
        assert_eq!(
            power_conjugation_solve(&w("a"), &w("b"), &w("abA")).unwrap(),
            Some(1)
        );
        assert_eq!(
            power_conjugation_solve(&w("aBB"), &w("bbaBBB"), &w("Ba")).unwrap(),
            None
        );
        assert_eq!(
            power_conjugation_solve(&w("ab"), &w("b"), &w("b")).unwrap(),
            Some(0)
        );
        assert_eq!(
            power_conjugation_solutions(&w("aa"), &w("a"), &w("a")).unwrap(),
            PowerSolutions::All
        );
        assert_eq!(
            power_conjugation_solutions(&w("aa"), &w("b"), &w("abA")).unwrap(),
            PowerSolutions::None
        );
        assert_eq!(
            power_conjugation_solutions(&w("bab"), &w("a"), &w("a").conjugate_by(&w("BAB")))
                .unwrap(),
            PowerSolutions::Unique(-1)
        );
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((1u32..=2, any::<bool>()), 0..=max_len)
            .prop_map(|v| Word::normalize(v.into_iter().map(|(g, s)| Letter::new(g, s))))
    }

    fn nontrivial(max_len: usize) -> impl Strategy<Value = Word> {
        word_strategy(max_len).prop_filter("nontrivial", |w| !w.is_identity())
    }

    proptest! {
        #[test]
        fn cyclic_reduce_round_trip(u in word_strategy(14)) {
            let (core, shell) = cyclic_reduce(&u);
            prop_assert_eq!(core.as_word().conjugate_by(&shell), u);
        }

        #[test]
        fn conjugacy_class_is_invariant(u in word_strategy(10), g in word_strategy(6)) {
            prop_assert_eq!(conjugacy_class(&u.conjugate_by(&g)), conjugacy_class(&u));
        }

        #[test]
        fn root_is_its_own_root(u in nontrivial(12)) {
            let (r, e) = primitive_root(&u).unwrap();
            prop_assert_eq!(r.pow(e as i64), u);
            prop_assert_eq!(primitive_root(&r).unwrap(), (r, 1));
        }

        #[test]
        fn witness_coset_is_complete(u in nontrivial(8), g in word_strategy(6)) {
            let v = u.conjugate_by(&g);
            let wit = conjugator(&u, &v).unwrap().unwrap();
            for k in -4..=4 {
                let c = wit.base.concat(&wit.root.pow(k));
                prop_assert_eq!(u.conjugate_by(&c), v.clone());
            }
        }

        #[test]
        fn planted_power_is_found(t in nontrivial(5), x in nontrivial(5), n in -6i64..=6) {
            let z = x.conjugate_by(&t.pow(n));
            let i = power_conjugation_solve(&t, &x, &z).unwrap().unwrap();
            prop_assert_eq!(x.conjugate_by(&t.pow(i)), z);
        }
    }
}
