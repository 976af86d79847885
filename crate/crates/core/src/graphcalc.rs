//! Allowed garland graphs: circle vertices joined by chord vertices whose
//! multi-indices list the circles they touch.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color {
    pub name: String,
    pub dim: u32,
}

impl Color {
    pub fn circle() -> Color {
        Color {
            name: "S1".to_string(),
            dim: 1,
        }
    }
}

/// An allowed graph. Circles are numbered `1..=nu`; each chord is a sorted
/// multi-index. Chords are kept sorted so equal graphs compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarlandGraph {
    nu: usize,
    colors: Vec<Color>,
    chords: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ColorCount { colors: usize, nu: usize },
    EmptyMultiIndex,
    IndexOutOfRange { chord: Vec<usize>, index: usize },
    RepeatedIndex { chord: Vec<usize> },
    DuplicateChord { chord: Vec<usize> },
    NotForest,
    ForbiddenStar { circle: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ColorCount { colors, nu } => {
                write!(f, "{colors} circle colors for nu={nu}")
            }
            Violation::EmptyMultiIndex => write!(f, "chord with empty multi-index"),
            Violation::IndexOutOfRange { chord, index } => {
                write!(
                    f,
                    "index {index} of chord {} out of range",
                    fmt_chord(chord)
                )
            }
            Violation::RepeatedIndex { chord } => {
                write!(f, "chord {} repeats a circle", fmt_chord(chord))
            }
            Violation::DuplicateChord { chord } => {
                write!(f, "chord {} occurs twice", fmt_chord(chord))
            }
            Violation::NotForest => write!(f, "incidence graph has a cycle"),
            Violation::ForbiddenStar { circle } => write!(
                f,
                "circle {circle} forms a component with more than one chord"
            ),
        }
    }
}

fn fmt_chord(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl GarlandGraph {
    /// `nu` circles and no chords.
    pub fn circles(nu: usize) -> GarlandGraph {
        GarlandGraph {
            nu,
            colors: vec![Color::circle(); nu],
            chords: Vec::new(),
        }
    }

    /// One circle, no chords.
    pub fn gamma0() -> GarlandGraph {
        GarlandGraph::circles(1)
    }

    /// Two circles joined by one chord.
    pub fn gamma1() -> GarlandGraph {
        GarlandGraph::with_chords(2, vec![vec![1, 2]])
    }

    /// Circles colored `S1`; multi-indices are sorted but not validated.
    pub fn with_chords(nu: usize, chords: Vec<Vec<usize>>) -> GarlandGraph {
        let mut g = GarlandGraph::circles(nu);
        g.chords = chords
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        g.chords.sort();
        g
    }

    pub fn with_colors(mut self, colors: Vec<Color>) -> GarlandGraph {
        self.colors = colors;
        self
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn chords(&self) -> &[Vec<usize>] {
        &self.chords
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        if self.colors.len() != self.nu {
            return Err(Violation::ColorCount {
                colors: self.colors.len(),
                nu: self.nu,
            });
        }
        for c in &self.chords {
            if c.is_empty() {
                return Err(Violation::EmptyMultiIndex);
            }
            if let Some(&index) = c.iter().find(|&&i| i == 0 || i > self.nu) {
                return Err(Violation::IndexOutOfRange {
                    chord: c.clone(),
                    index,
                });
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Violation::RepeatedIndex { chord: c.clone() });
            }
        }
        // Circles are nodes 0..nu, chords nu.. in the incidence graph.
        let mut uf = UnionFind::new(self.nu + self.chords.len());
        for (j, c) in self.chords.iter().enumerate() {
            for &i in c {
                if !uf.union(i - 1, self.nu + j) {
                    return Err(Violation::NotForest);
                }
            }
        }
        for circle in 1..=self.nu {
            let root = uf.find(circle - 1);
            let circles = (0..self.nu).filter(|&i| uf.find(i) == root).count();
            let chords = (0..self.chords.len())
                .filter(|&j| uf.find(self.nu + j) == root)
                .count();
            if circles == 1 && chords > 1 {
                return Err(Violation::ForbiddenStar { circle });
            }
        }
        if let Some(w) = self.chords.windows(2).find(|w| w[0] == w[1]) {
            return Err(Violation::DuplicateChord {
                chord: w[0].clone(),
            });
        }
        Ok(())
    }

    /// Connected components as sorted lists of circle indices, ordered by
    /// their lowest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nu);
        for c in &self.chords {
            for w in c.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.nu {
            let r = uf.find(i);
            match comps.iter_mut().find(|c| uf.find(c[0] - 1) == r) {
                Some(c) => c.push(i + 1),
                None => comps.push(vec![i + 1]),
            }
        }
        comps
    }

    /// Circles sharing a chord with circle `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .chords
            .iter()
            .filter(|c| c.contains(&i))
            .flat_map(|c| c.iter().copied().filter(|&j| j != i))
            .collect();
        out.sort_unstable();
        out
    }

    fn shifted_chords(&self, by: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.chords
            .iter()
            .map(move |c| c.iter().map(|i| i + by).collect())
    }
}

impl fmt::Display for GarlandGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chords: Vec<String> = self.chords.iter().map(|c| fmt_chord(c)).collect();
        write!(f, "nu={}; chords={}", self.nu, chords.join(","))
    }
}

impl FromStr for GarlandGraph {
    type Err = Error;

    /// Parses `nu=3; chords={1,2},{2,3}`; whitespace is ignored.
    fn from_str(s: &str) -> Result<GarlandGraph> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Parse(format!("graph `{s}`: {msg}"));
        let mut nu = None;
        let mut chords = Vec::new();
        for part in compact.split(';').filter(|p| !p.is_empty()) {
            if let Some(n) = part.strip_prefix("nu=") {
                nu = Some(n.parse::<usize>().map_err(|_| bad("bad nu"))?);
            } else if let Some(body) = part.strip_prefix("chords=") {
                let mut rest = body;
                while !rest.is_empty() {
                    let inner = rest.strip_prefix('{').ok_or_else(|| bad("expected `{`"))?;
                    let end = inner.find('}').ok_or_else(|| bad("unclosed `{`"))?;
                    let chord = if inner[..end].is_empty() {
                        Vec::new()
                    } else {
                        inner[..end]
                            .split(',')
                            .map(|t| t.parse::<usize>().map_err(|_| bad("bad index")))
                            .collect::<Result<Vec<_>>>()?
                    };
                    chords.push(chord);
                    rest = &inner[end + 1..];
                    rest = rest.strip_prefix(',').unwrap_or(rest);
                }
            } else {
                return Err(bad("unknown field"));
            }
        }
        let nu = nu.ok_or_else(|| bad("missing nu"))?;
        Ok(GarlandGraph::with_chords(nu, chords))
    }
}

/// A permutation of `1..=n`, stored as the sequence of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleRelabeling(Vec<usize>);

impl CircleRelabeling {
    pub fn new(images: Vec<usize>) -> Result<CircleRelabeling> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[i - 1] = true;
        }
        Ok(CircleRelabeling(images))
    }

    pub fn identity(n: usize) -> CircleRelabeling {
        CircleRelabeling((1..=n).collect())
    }

    /// The block permutation sending the first `n1` circles after the next `n2`.
    pub fn swap_blocks(n1: usize, n2: usize) -> CircleRelabeling {
        CircleRelabeling::swap_first_blocks(n1, n2, 0)
    }

    /// As `swap_blocks`, with the last `n3` circles fixed.
    pub fn swap_first_blocks(n1: usize, n2: usize, n3: usize) -> CircleRelabeling {
        let images = (n1 + 1..=n1 + n2)
            .chain(1..=n1)
            .chain(n1 + n2 + 1..=n1 + n2 + n3)
            .collect();
        CircleRelabeling(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &CircleRelabeling) -> CircleRelabeling {
        CircleRelabeling(first.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> CircleRelabeling {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j - 1] = i + 1;
        }
        CircleRelabeling(inv)
    }

    /// Every permutation of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<CircleRelabeling> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(CircleRelabeling(cur.clone()));
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

pub fn compose_b(
    g1: &GarlandGraph,
    g2: &GarlandGraph,
    k1: usize,
    k2: usize,
) -> Result<GarlandGraph> {
    if k1 == 0 || k1 > g1.nu {
        return Err(Error::IndexOutOfRange {
            index: k1,
            nu: g1.nu,
        });
    }
    if k2 == 0 || k2 > g2.nu {
        return Err(Error::IndexOutOfRange {
            index: k2,
            nu: g2.nu,
        });
    }
    let mut g = compose_d(g1, g2);
    g.chords.push(vec![k1, k2 + g1.nu]);
    g.chords.sort();
    Ok(g)
}

pub fn compose_d(g1: &GarlandGraph, g2: &GarlandGraph) -> GarlandGraph {
    let mut chords: Vec<Vec<usize>> = g1.chords.clone();
    chords.extend(g2.shifted_chords(g1.nu));
    chords.sort();
    let mut colors = g1.colors.clone();
    colors.extend(g2.colors.iter().cloned());
    GarlandGraph {
        nu: g1.nu + g2.nu,
        colors,
        chords,
    }
}

/// Circle `i` becomes circle `alpha(i)`. A relabeling of the wrong size
/// leaves the graph unchanged.
pub fn permute(alpha: &CircleRelabeling, g: &GarlandGraph) -> GarlandGraph {
    if alpha.len() != g.nu {
        return g.clone();
    }
    let mut colors = g.colors.clone();
    for (i, c) in g.colors.iter().enumerate() {
        colors[alpha.apply(i + 1) - 1] = c.clone();
    }
    let mut chords: Vec<Vec<usize>> = g
        .chords
        .iter()
        .map(|c| {
            let mut image: Vec<usize> = c.iter().map(|&i| alpha.apply(i)).collect();
            image.sort_unstable();
            image
        })
        .collect();
    chords.sort();
    GarlandGraph {
        nu: g.nu,
        colors,
        chords,
    }
}
