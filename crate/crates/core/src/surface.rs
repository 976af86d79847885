//! Ribbon-graph surfaces and the signed crossings of two free loops.
//!
//! A surface is a rose with one vertex and `rank` loops, thickened using a
//! counterclockwise cyclic order of the `2 * rank` edge-ends. The edge-end
//! `x` is where a path leaves the vertex while reading the letter `x`; it
//! arrives back through the end `x^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, Mul};
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fgroup::{conjugacy_class, share_root, CyclicWord, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonSurface {
    name: Option<String>,
    rank: u32,
    order: Vec<Letter>,
    slot: BTreeMap<Letter, usize>,
}

/// End order of the `section13` builtin: the only cyclic order of `a b A B`
/// on which `aBB` and `aB` have the reference crossing data (see the
/// `section13_order_is_unique` test).
const SECTION13_ORDER: &str = "a B b A";

impl RibbonSurface {
    pub fn new(rank: u32, order: Vec<Letter>) -> Result<RibbonSurface> {
        if rank == 0 {
            return Err(Error::InvalidSurface("rank must be at least 1".into()));
        }
        if order.len() != 2 * rank as usize {
            return Err(Error::InvalidSurface(format!(
                "order lists {} ends, expected {}",
                order.len(),
                2 * rank
            )));
        }
        let mut slot = BTreeMap::new();
        for (i, &x) in order.iter().enumerate() {
            if x.generator() > rank {
                return Err(Error::InvalidSurface(format!(
                    "end {x:?} exceeds rank {rank}"
                )));
            }
            if slot.insert(x, i).is_some() {
                return Err(Error::InvalidSurface(format!("end {x:?} listed twice")));
            }
        }
        Ok(RibbonSurface {
            name: None,
            rank,
            order,
            slot,
        })
    }

    pub fn with_name(mut self, name: &str) -> RibbonSurface {
        self.name = Some(name.to_string());
        self
    }

    /// `torus1`, `pants`, `section13` or `annulus`.
    pub fn builtin(name: &str) -> Option<RibbonSurface> {
        let (rank, order) = match name {
            "torus1" => (2, "a b A B"),
            "pants" => (2, "a A b B"),
            "section13" => (2, SECTION13_ORDER),
            "annulus" => (1, "a A"),
            _ => return None,
        };
        let order = parse_order(order).ok()?;
        Some(RibbonSurface::new(rank, order).ok()?.with_name(name))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn order(&self) -> &[Letter] {
        &self.order
    }

    fn slot(&self, x: Letter) -> Result<usize> {
        self.slot.get(&x).copied().ok_or_else(|| {
            Error::InvalidSurface(format!("letter {x:?} is not an end of this surface"))
        })
    }

    fn next_ccw(&self, x: Letter) -> Letter {
        let n = self.order.len();
        self.order[(self.slot[&x] + 1) % n]
    }

    /// Boundary cycles of the thickened rose, as words read along each cycle.
    pub fn boundary_components(&self) -> Vec<Word> {
        let ends = self.order.clone();
        let mut seen = BTreeMap::new();
        let mut out = Vec::new();
        for &start in &ends {
            if seen.contains_key(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while seen.insert(x, ()).is_none() {
                cycle.push(x);
                x = self.next_ccw(x.inverse());
            }
            out.push(Word::normalize(cycle));
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.rank as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic() - self.boundary_components().len() as i64) / 2
    }

    fn check_letters(&self, w: &CyclicWord) -> Result<()> {
        if w.is_empty() {
            return Err(Error::TrivialInput("loop class"));
        }
        match w.letters().iter().find(|x| x.generator() > self.rank) {
            Some(x) => Err(Error::InvalidSurface(format!(
                "letter {x:?} exceeds rank {}",
                self.rank
            ))),
            None => Ok(()),
        }
    }

    /// Skew pairing of generator loops: entry `[i][j]` is the signed crossing
    /// count of `a_{i+1}` and `a_{j+1}`.
    pub fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let gens: Vec<CyclicWord> = (1..=self.rank)
            .map(|g| conjugacy_class(&Word::generator(g)))
            .collect();
        gens.iter()
            .map(|a| {
                gens.iter()
                    .map(|b| {
                        if a == b {
                            return 0;
                        }
                        self.linked_pairs(a, b)
                            .expect("distinct generators never share a root")
                            .iter()
                            .map(|t| t.geom_sign as i64)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    /// Algebraic intersection number of the homology classes of two loops.
    pub fn homological_pairing(&self, w1: &CyclicWord, w2: &CyclicWord) -> i64 {
        let n = self.rank as usize;
        let x = w1.as_word().abelianization(n);
        let y = w2.as_word().abelianization(n);
        let p = self.pairing_matrix();
        let mut total = 0;
        for i in 0..n {
            for j in 0..n {
                total += x[i] * y[j] * p[i][j];
            }
        }
        total
    }

    /// The transverse crossings of the rose representatives of `w1` and `w2`.
    pub fn linked_pairs(&self, w1: &CyclicWord, w2: &CyclicWord) -> Result<Vec<CrossingTerm>> {
        self.check_letters(w1)?;
        self.check_letters(w2)?;
        if share_root(&w1.as_word(), &w2.as_word())? {
            return Err(Error::CommonRoot {
                w1: w1.to_string(),
                w2: w2.to_string(),
            });
        }
        // A maximal shared segment is reported once: at the end where the
        // backward rays split, or for segments traversed in opposite
        // directions, at the end where the smaller word's backward ray splits.
        let first_is_smaller = w1 <= w2;
        let mut out = Vec::new();
        for p in 0..w1.len() {
            for q in 0..w2.len() {
                let rays = [
                    Ray::new(w1, p, true),
                    Ray::new(w1, p, false),
                    Ray::new(w2, q, true),
                    Ray::new(w2, q, false),
                ];
                let [r1p, r1m, r2p, r2m] = &rays;
                if r1m.first() == r2m.first() {
                    continue;
                }
                let opposite = if first_is_smaller {
                    r1m.first() == r2p.first()
                } else {
                    r2m.first() == r1p.first()
                };
                if opposite {
                    continue;
                }
                let Some(geom_sign) = self.crossing_sign(&rays, w1.len() + w2.len())? else {
                    continue;
                };
                out.push(CrossingTerm {
                    p,
                    q,
                    geom_sign,
                    u: w1.rotation(p),
                    v: w2.rotation(q),
                });
            }
        }
        Ok(out)
    }

    /// Orders the rays `[R1+, R1-, R2+, R2-]` counterclockwise and returns
    /// the crossing sign if the two loops alternate.
    fn crossing_sign(&self, rays: &[Ray; 4], horizon: usize) -> Result<Option<i32>> {
        let mut idx = [0usize, 1, 2, 3];
        let mut err = None;
        idx.sort_by(
            |&a, &b| match self.compare_rays(&rays[a], &rays[b], horizon) {
                Ok(o) => o,
                Err(e) => {
                    err = Some(e);
                    std::cmp::Ordering::Equal
                }
            },
        );
        if let Some(e) = err {
            return Err(e);
        }
        Ok(alternation_sign(&idx))
    }

    /// Counterclockwise order of two rays leaving the vertex. Rays that leave
    /// through the same end are ordered by where they split: arriving through
    /// end `e`, the ray turning off first counterclockwise after `e` stays to
    /// the right, and the right-hand ray comes first at the start.
    fn compare_rays(&self, r: &Ray, s: &Ray, horizon: usize) -> Result<std::cmp::Ordering> {
        let (x, y) = (r.first(), s.first());
        if x != y {
            return Ok(self.slot(x)?.cmp(&self.slot(y)?));
        }
        let n = self.order.len();
        for k in 1..=horizon {
            let (a, b) = (r.at(k), s.at(k));
            if a != b {
                let arrive = self.slot(r.at(k - 1).inverse())?;
                let rank = |z: Letter| -> Result<usize> { Ok((self.slot(z)? + n - arrive) % n) };
                return Ok(rank(a)?.cmp(&rank(b)?));
            }
        }
        Err(Error::CommonRoot {
            w1: r.word.to_string(),
            w2: s.word.to_string(),
        })
    }

    /// Crossings of one explicit transverse drawing of the two loops. Inside
    /// each band the strands run parallel in the order given by `bands`, so
    /// every crossing happens at the vertex; unlike `linked_pairs` the count
    /// need not be minimal.
    pub fn drawn_crossings(
        &self,
        w1: &CyclicWord,
        w2: &CyclicWord,
        bands: &BandOrder,
    ) -> Result<Vec<CrossingTerm>> {
        self.check_letters(w1)?;
        self.check_letters(w2)?;
        bands.check(w1, w2)?;
        let words = [w1, w2];
        let mut out = Vec::new();
        for p in 0..w1.len() {
            for q in 0..w2.len() {
                // (loop, traversal leaving through the end) for R1+, R1-, R2+, R2-.
                let pts = [
                    (0, p as i64, true),
                    (0, p as i64 - 1, false),
                    (1, q as i64, true),
                    (1, q as i64 - 1, false),
                ];
                let mut keys = [(0usize, 0usize); 4];
                for (i, &(l, t, leaving)) in pts.iter().enumerate() {
                    let w = words[l];
                    let t = t.rem_euclid(w.len() as i64) as usize;
                    let x = w.at(t as i64);
                    let end = if leaving { x } else { x.inverse() };
                    let lane = bands.lane(x.generator(), (l, t));
                    let width = bands.width(x.generator());
                    // Right-hand lanes come first counterclockwise at a
                    // positive end and last at a negative one.
                    let within = if end.is_positive() {
                        lane
                    } else {
                        width - 1 - lane
                    };
                    keys[i] = (self.slot(end)?, within);
                }
                let mut idx = [0usize, 1, 2, 3];
                idx.sort_by_key(|&i| keys[i]);
                if let Some(geom_sign) = alternation_sign(&idx) {
                    out.push(CrossingTerm {
                        p,
                        q,
                        geom_sign,
                        u: w1.rotation(p),
                        v: w2.rotation(q),
                    });
                }
            }
        }
        Ok(out)
    }

    /// `a11_terms` for an explicit drawing.
    pub fn drawn_a11_terms(
        &self,
        w1: &CyclicWord,
        w2: &CyclicWord,
        bands: &BandOrder,
    ) -> Result<Vec<PairTerm>> {
        Ok(self
            .drawn_crossings(w1, w2, bands)?
            .into_iter()
            .map(PairTerm::from_crossing)
            .collect())
    }

    /// `Σ sign · class(u v)` over crossings, like classes combined.
    pub fn goldman_bracket(&self, w1: &CyclicWord, w2: &CyclicWord) -> Result<LoopSum> {
        let mut sum = LoopSum::default();
        for t in self.linked_pairs(w1, w2)? {
            sum.add(conjugacy_class(&t.u.concat(&t.v)), t.geom_sign as i64);
        }
        Ok(sum)
    }

    /// One pair term per crossing with coefficient `-geom_sign`.
    pub fn a11_terms(&self, w1: &CyclicWord, w2: &CyclicWord) -> Result<Vec<PairTerm>> {
        Ok(self
            .linked_pairs(w1, w2)?
            .into_iter()
            .map(PairTerm::from_crossing)
            .collect())
    }
}

impl fmt::Display for RibbonSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        writeln!(f, "rank: {}", self.rank)?;
        let ends: Vec<String> = self.order.iter().map(|x| format!("{x:?}")).collect();
        write!(f, "order: {}", ends.join(" "))
    }
}

fn parse_order(s: &str) -> Result<Vec<Letter>> {
    s.split_whitespace()
        .map(|t| {
            let w: Word = t.parse()?;
            match w.letters() {
                [x] => Ok(*x),
                _ => Err(Error::Parse(format!("`{t}` is not a single edge-end"))),
            }
        })
        .collect()
}

impl FromStr for RibbonSurface {
    type Err = Error;

    /// Parses the `rank:` / `order:` / `name:` line format.
    fn from_str(s: &str) -> Result<RibbonSurface> {
        let mut rank = None;
        let mut order = None;
        let mut name = None;
        for line in s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            match key.trim() {
                "rank" => {
                    rank = Some(
                        value
                            .trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad rank `{}`", value.trim())))?,
                    )
                }
                "order" => order = Some(parse_order(value)?),
                "name" => name = Some(value.trim().to_string()),
                other => return Err(Error::Parse(format!("unknown surface field `{other}`"))),
            }
        }
        let rank = rank.ok_or_else(|| Error::Parse("surface file lacks `rank:`".into()))?;
        let order = order.ok_or_else(|| Error::Parse("surface file lacks `order:`".into()))?;
        let s = RibbonSurface::new(rank, order)?;
        Ok(match name {
            Some(n) => s.with_name(&n),
            None => s,
        })
    }
}

/// Given the counterclockwise order of the rays `[R1+, R1-, R2+, R2-]`
/// (as indices), the crossing sign if the two loops alternate.
fn alternation_sign(idx: &[usize; 4]) -> Option<i32> {
    let pos = |r: usize| idx.iter().position(|&i| i == r).unwrap();
    let (a, b) = (pos(0), pos(1));
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |r: usize| (lo < pos(r)) && (pos(r) < hi);
    if inside(2) == inside(3) {
        return None;
    }
    // Counterclockwise from R1+: +1 if R2+ comes before R1-.
    let from = |r: usize| (pos(r) + 4 - a) % 4;
    Some(if from(2) < from(1) { 1 } else { -1 })
}

/// Strand order inside each band for a drawing of two loops. A strand is
/// `(loop, position)`: loop 0 or 1, and the position of the letter it
/// traverses. Each band lists its strands from right to left, looking along
/// the positive generator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BandOrder {
    bands: BTreeMap<u32, Vec<(usize, usize)>>,
}

impl BandOrder {
    pub fn new(bands: BTreeMap<u32, Vec<(usize, usize)>>) -> BandOrder {
        BandOrder { bands }
    }

    /// Every strand of the first loop to the right of every strand of the
    /// second.
    pub fn stacked(w1: &CyclicWord, w2: &CyclicWord) -> BandOrder {
        let mut bands: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (l, w) in [w1, w2].into_iter().enumerate() {
            for (t, x) in w.letters().iter().enumerate() {
                bands.entry(x.generator()).or_default().push((l, t));
            }
        }
        BandOrder { bands }
    }

    pub fn bands(&self) -> &BTreeMap<u32, Vec<(usize, usize)>> {
        &self.bands
    }

    fn lane(&self, g: u32, strand: (usize, usize)) -> usize {
        self.bands[&g].iter().position(|&s| s == strand).unwrap()
    }

    fn width(&self, g: u32) -> usize {
        self.bands[&g].len()
    }

    fn check(&self, w1: &CyclicWord, w2: &CyclicWord) -> Result<()> {
        let expected = BandOrder::stacked(w1, w2);
        for (g, strands) in &expected.bands {
            let mut have = self.bands.get(g).cloned().unwrap_or_default();
            have.sort_unstable();
            if &have != strands {
                return Err(Error::InvalidSurface(format!(
                    "band {g} must list the strands {strands:?}"
                )));
            }
        }
        if self.bands.keys().any(|g| !expected.bands.contains_key(g)) {
            return Err(Error::InvalidSurface(
                "band order names unused bands".into(),
            ));
        }
        Ok(())
    }
}

/// The non-minimal drawing of `aBB` and `aB` on `section13` with four
/// crossings, two of which form a removable bigon.
pub fn section13_drawing() -> BandOrder {
    BandOrder::new(BTreeMap::from([
        (1, vec![(0, 0), (1, 0)]),
        (2, vec![(0, 2), (1, 1), (0, 1)]),
    ]))
}

/// A periodic ray read from position `start` of a cyclic word, forwards or
/// backwards (backwards rays read inverse letters).
struct Ray<'a> {
    word: &'a CyclicWord,
    start: usize,
    forward: bool,
}

impl<'a> Ray<'a> {
    fn new(word: &'a CyclicWord, start: usize, forward: bool) -> Self {
        Ray {
            word,
            start,
            forward,
        }
    }

    fn at(&self, k: usize) -> Letter {
        let s = self.start as i64;
        let k = k as i64;
        if self.forward {
            self.word.at(s + k)
        } else {
            self.word.at(s - 1 - k).inverse()
        }
    }

    fn first(&self) -> Letter {
        self.at(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingTerm {
    pub p: usize,
    pub q: usize,
    pub geom_sign: i32,
    pub u: Word,
    pub v: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTerm {
    pub coef: i32,
    pub u: Word,
    pub v: Word,
    pub p: usize,
    pub q: usize,
}

impl PairTerm {
    fn from_crossing(t: CrossingTerm) -> PairTerm {
        PairTerm {
            coef: -t.geom_sign,
            u: t.u,
            v: t.v,
            p: t.p,
            q: t.q,
        }
    }
}

/// A finite combination of free loop classes; integer coefficients by
/// default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSum<C = i64> {
    terms: BTreeMap<CyclicWord, C>,
}

impl<C> Default for LoopSum<C> {
    fn default() -> Self {
        LoopSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Copy + Zero + AddAssign + Mul<Output = C>> LoopSum<C> {
    pub fn add(&mut self, class: CyclicWord, coef: C) {
        let c = self.terms.entry(class.clone()).or_insert_with(C::zero);
        *c += coef;
        if c.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, C)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map<D, F>(&self, f: F) -> LoopSum<D>
    where
        D: Copy + Zero + AddAssign + Mul<Output = D>,
        F: Fn(C) -> D,
    {
        let mut out = LoopSum::default();
        for (k, &v) in &self.terms {
            out.add(k.clone(), f(v));
        }
        out
    }
}

impl<C: fmt::Display> fmt::Display for LoopSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, v)| format!("{v} * [{c}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
