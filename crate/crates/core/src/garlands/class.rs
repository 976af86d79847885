use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fgroup::{
    conjugacy_class, conjugator, power_conjugation_solutions, primitive_root, CyclicWord,
    PowerSolutions, Word,
};
use crate::graphcalc::{compose_b, compose_d, permute, CircleRelabeling, GarlandGraph};

/// A garland on a tree-shaped graph: one based loop per circle. Two classes
/// are equal when their labels differ by the moves
///
/// * global conjugation of every label in a component, and
/// * sliding a chord along circle `i`: conjugating every label in the subtree
///   beyond that chord (away from the component root) by a power of `x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreeGarlandClass {
    graph: GarlandGraph,
    labels: Vec<Word>,
}

impl TreeGarlandClass {
    pub fn new(graph: GarlandGraph, labels: Vec<Word>) -> Result<TreeGarlandClass> {
        graph.validate().map_err(Error::InvalidGraph)?;
        if let Some(c) = graph.chords().iter().find(|c| c.len() != 2) {
            return Err(Error::NotTreeLike(format!(
                "chord {c:?} does not join exactly two circles"
            )));
        }
        if labels.len() != graph.nu() {
            return Err(Error::NotTreeLike(format!(
                "{} labels for {} circles",
                labels.len(),
                graph.nu()
            )));
        }
        if labels.iter().any(Word::is_identity) {
            return Err(Error::TrivialInput("garland label"));
        }
        Ok(TreeGarlandClass { graph, labels })
    }

    /// A single circle labeled `w`.
    pub fn circle(w: Word) -> Result<TreeGarlandClass> {
        TreeGarlandClass::new(GarlandGraph::gamma0(), vec![w])
    }

    /// Two circles joined by a chord.
    pub fn pair(u: Word, v: Word) -> Result<TreeGarlandClass> {
        TreeGarlandClass::new(GarlandGraph::gamma1(), vec![u, v])
    }

    pub fn graph(&self) -> &GarlandGraph {
        &self.graph
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn nu(&self) -> usize {
        self.graph.nu()
    }

    /// Circle `i` becomes circle `alpha(i)`.
    pub fn relabel(&self, alpha: &CircleRelabeling) -> TreeGarlandClass {
        if alpha.len() != self.nu() {
            return self.clone();
        }
        let mut labels = self.labels.clone();
        for (i, x) in self.labels.iter().enumerate() {
            labels[alpha.apply(i + 1) - 1] = x.clone();
        }
        TreeGarlandClass {
            graph: permute(alpha, &self.graph),
            labels,
        }
    }

    pub fn conjugate_all(&self, c: &Word) -> TreeGarlandClass {
        TreeGarlandClass {
            graph: self.graph.clone(),
            labels: self.labels.iter().map(|x| x.conjugate_by(c)).collect(),
        }
    }

    /// Disjoint union, second garland's circles numbered after the first's.
    pub fn disjoint_union(&self, other: &TreeGarlandClass) -> TreeGarlandClass {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        TreeGarlandClass {
            graph: compose_d(&self.graph, &other.graph),
            labels,
        }
    }

    /// Joins circle `k1` of `self` and `k2` of `other` by a new chord.
    pub fn joined(
        &self,
        other: &TreeGarlandClass,
        k1: usize,
        k2: usize,
    ) -> Result<TreeGarlandClass> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Ok(TreeGarlandClass {
            graph: compose_b(&self.graph, &other.graph, k1, k2)?,
            labels,
        })
    }

    /// Moves `(S)` along the chord from `parent` towards `child`: conjugates
    /// the subtree containing `child` by `x_parent^k`.
    pub fn slide(&self, parent: usize, child: usize, k: i64) -> TreeGarlandClass {
        let c = self.labels[parent - 1].pow(k);
        let mut out = self.clone();
        for i in self.subtree(parent, child) {
            out.labels[i - 1] = self.labels[i - 1].conjugate_by(&c);
        }
        out
    }

    /// Circles reachable from `child` without passing through `parent`.
    pub fn subtree(&self, parent: usize, child: usize) -> Vec<usize> {
        let mut out = vec![child];
        let mut stack = vec![(child, parent)];
        while let Some((v, from)) = stack.pop() {
            for n in self.graph.neighbors(v) {
                if n != from {
                    out.push(n);
                    stack.push((n, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Restriction to the given circles (sorted), renumbered `1..`.
    pub fn restrict(&self, circles: &[usize]) -> TreeGarlandClass {
        let index = |i: usize| circles.iter().position(|&c| c == i).map(|p| p + 1);
        let chords = self
            .graph
            .chords()
            .iter()
            .filter_map(|c| c.iter().map(|&i| index(i)).collect::<Option<Vec<_>>>())
            .collect();
        TreeGarlandClass {
            graph: GarlandGraph::with_chords(circles.len(), chords),
            labels: circles
                .iter()
                .map(|&i| self.labels[i - 1].clone())
                .collect(),
        }
    }

    /// Components as sub-garlands, ordered by lowest circle.
    pub fn components(&self) -> Vec<TreeGarlandClass> {
        self.graph
            .components()
            .iter()
            .map(|c| self.restrict(c))
            .collect()
    }

    /// Data preserved by the moves and by relabeling: per component, the
    /// sorted (free loop class, valence) pairs; components sorted.
    pub fn invariant(&self) -> Vec<Vec<(CyclicWord, usize)>> {
        let mut out: Vec<Vec<(CyclicWord, usize)>> = self
            .graph
            .components()
            .iter()
            .map(|comp| {
                let mut v: Vec<(CyclicWord, usize)> = comp
                    .iter()
                    .map(|&i| {
                        (
                            conjugacy_class(&self.labels[i - 1]),
                            self.graph.neighbors(i).len(),
                        )
                    })
                    .collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for TreeGarlandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, x)| format!("x{}={x}", i + 1))
            .collect();
        write!(f, "{} :: labels {}", self.graph, labels.join(", "))
    }
}

impl fmt::Debug for TreeGarlandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

/// Exponents `n` for which a node admits a solution, as a subset of Z.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Exponents {
    Empty,
    Single(i64),
    /// All `n` congruent to one of `residues` modulo `modulus`.
    Periodic {
        modulus: i64,
        residues: BTreeSet<i64>,
    },
}

impl Exponents {
    fn is_empty(&self) -> bool {
        matches!(self, Exponents::Empty)
    }

    /// Whether some member is congruent to `r` modulo `e`.
    fn meets(&self, r: i64, e: i64) -> bool {
        match self {
            Exponents::Empty => false,
            Exponents::Single(p) => (p - r).rem_euclid(e) == 0,
            Exponents::Periodic { modulus, residues } => {
                let g = modulus.gcd(&e);
                residues.iter().any(|x| (x - r).rem_euclid(g) == 0)
            }
        }
    }
}

struct Tree<'a> {
    x: &'a TreeGarlandClass,
    y: &'a TreeGarlandClass,
}

impl Tree<'_> {
    /// The `n` with `h = a t^n` such that `h x_v h^-1 = y_v` and the subtree
    /// below `v` (away from `from`) can be matched.
    fn solve(&self, v: usize, from: usize, a: &Word, t: &Word) -> Result<Exponents> {
        let xv = &self.x.labels[v - 1];
        let z = self.y.labels[v - 1].conjugate_by(&a.invert());
        let children: Vec<usize> = self
            .x
            .graph
            .neighbors(v)
            .into_iter()
            .filter(|&c| c != from)
            .collect();
        match power_conjugation_solutions(t, xv, &z)? {
            PowerSolutions::None => Ok(Exponents::Empty),
            PowerSolutions::Unique(n) => {
                let h = a.concat(&t.pow(n));
                for c in children {
                    if self.solve(c, v, &h, xv)?.is_empty() {
                        return Ok(Exponents::Empty);
                    }
                }
                Ok(Exponents::Single(n))
            }
            PowerSolutions::All => {
                // t and x_v are powers of one primitive rho: t = rho^s,
                // x_v = rho^e, so a t^n x_v^k = a rho^(s n + e k).
                let (rho, e) = primitive_root(xv)?;
                let (rt, et) = primitive_root(t)?;
                let s = if rt == rho { et as i64 } else { -(et as i64) };
                let e = e as i64;
                let mut residues: BTreeSet<i64> = (0..e).collect();
                for c in children {
                    let sub = self.solve(c, v, a, &rho)?;
                    residues.retain(|&n| sub.meets(s * n, e));
                    if residues.is_empty() {
                        return Ok(Exponents::Empty);
                    }
                }
                Ok(Exponents::Periodic {
                    modulus: e,
                    residues,
                })
            }
        }
    }
}

/// Whether two garlands on the same graph are related by the moves.
pub fn class_equal(c1: &TreeGarlandClass, c2: &TreeGarlandClass) -> Result<bool> {
    if c1.graph != c2.graph {
        return Ok(false);
    }
    let tree = Tree { x: c1, y: c2 };
    for comp in c1.graph.components() {
        let r = comp[0];
        let Some(wit) = conjugator(&c1.labels[r - 1], &c2.labels[r - 1])? else {
            return Ok(false);
        };
        if tree.solve(r, 0, &wit.base, &wit.root)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some relabeling of `c1` is move-equivalent to `c2`.
pub fn equivalent_up_to_relabeling(c1: &TreeGarlandClass, c2: &TreeGarlandClass) -> Result<bool> {
    if c1.nu() != c2.nu() || c1.graph.chords().len() != c2.graph.chords().len() {
        return Ok(false);
    }
    if c1.invariant() != c2.invariant() {
        return Ok(false);
    }
    let a = c1.components();
    let b = c2.components();
    let mut used = vec![false; b.len()];
    match_components(&a, &b, 0, &mut used)
}

fn match_components(
    a: &[TreeGarlandClass],
    b: &[TreeGarlandClass],
    i: usize,
    used: &mut [bool],
) -> Result<bool> {
    if i == a.len() {
        return Ok(true);
    }
    for j in 0..b.len() {
        if used[j] || !component_equivalent(&a[i], &b[j])? {
            continue;
        }
        used[j] = true;
        if match_components(a, b, i + 1, used)? {
            return Ok(true);
        }
        used[j] = false;
    }
    Ok(false)
}

fn component_equivalent(x: &TreeGarlandClass, y: &TreeGarlandClass) -> Result<bool> {
    if x.nu() != y.nu() || x.invariant() != y.invariant() {
        return Ok(false);
    }
    for alpha in CircleRelabeling::all(x.nu()) {
        if permute(&alpha, &x.graph) != y.graph {
            continue;
        }
        if class_equal(&x.relabel(&alpha), y)? {
            return Ok(true);
        }
    }
    Ok(false)
}
