use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::class::TreeGarlandClass;
use super::element::{GarlandElement, LabeledElement, Rational};
use crate::error::{Error, Result};
use crate::fgroup::{conjugacy_class, cyclic_reduce, Word};
use crate::graphcalc::{GarlandGraph, Violation};
use crate::surface::{LoopSum, PairTerm, RibbonSurface};

/// The class of a single loop.
pub fn loop_class(w: &Word) -> Result<GarlandElement> {
    if w.is_identity() {
        return Err(Error::TrivialInput("loop_class"));
    }
    Ok(GarlandElement::single(
        TreeGarlandClass::circle(w.clone())?,
        Rational::one(),
    ))
}

/// Based loops joined by two-ended chords. `chords` holds 1-based circle
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    pub loops: Vec<Word>,
    pub chords: Vec<(usize, usize)>,
}

pub fn chord_diagram_class(d: &ChordDiagram) -> Result<GarlandElement> {
    let nu = d.loops.len();
    if let Some(&(i, _)) = d.chords.iter().find(|(i, j)| i == j) {
        return Err(Error::NotTreeLike(format!(
            "chord joins circle {i} to itself"
        )));
    }
    let graph = GarlandGraph::with_chords(nu, d.chords.iter().map(|&(i, j)| vec![i, j]).collect());
    match graph.validate() {
        Ok(()) => {}
        Err(Violation::NotForest) => {
            return Err(Error::NotTreeLike("the chords close a cycle".into()))
        }
        Err(Violation::DuplicateChord { chord: c }) => {
            return Err(Error::NotTreeLike(format!("chord {c:?} appears twice")))
        }
        Err(v) => return Err(Error::InvalidGraph(v)),
    }
    Ok(GarlandElement::single(
        TreeGarlandClass::new(graph, d.loops.clone())?,
        Rational::one(),
    ))
}

/// Glues circle `k1` of `x1` to circle `k2` of `x2` at every crossing of
/// their free loops on `s`. Each term is based at the crossing: `x1` is
/// conjugated so that circle `k1` reads the loop starting there, likewise
/// `x2`, and the two are joined by a chord.
pub fn a_op(
    k1: usize,
    k2: usize,
    x1: &TreeGarlandClass,
    x2: &TreeGarlandClass,
    s: &RibbonSurface,
) -> Result<LabeledElement> {
    for (k, x) in [(k1, x1), (k2, x2)] {
        if k == 0 || k > x.nu() {
            return Err(Error::IndexOutOfRange {
                index: k,
                nu: x.nu(),
            });
        }
    }
    let (core1, shell1) = cyclic_reduce(&x1.labels()[k1 - 1]);
    let (core2, shell2) = cyclic_reduce(&x2.labels()[k2 - 1]);
    let mut out = LabeledElement::zero();
    for t in s.a11_terms(&core1, &core2)? {
        let h1 = shell1.concat(&core1.as_word().prefix(t.p)).invert();
        let h2 = shell2.concat(&core2.as_word().prefix(t.q)).invert();
        let y1 = x1.conjugate_all(&h1);
        let y2 = x2.conjugate_all(&h2);
        debug_assert_eq!(y1.labels()[k1 - 1], t.u);
        debug_assert_eq!(y2.labels()[k2 - 1], t.v);
        out.add(y1.joined(&y2, k1, k2)?, Rational::from(t.coef as i64))?;
    }
    Ok(out)
}

/// The bracket, extended bilinearly. Keys stand for their relabeling
/// averages, so summing `a_op` over all circle pairs of representatives
/// already carries the factorial weights.
pub fn lie_bracket(
    e1: &GarlandElement,
    e2: &GarlandElement,
    s: &RibbonSurface,
) -> Result<GarlandElement> {
    let mut out = GarlandElement::zero();
    for (x1, c) in e1.terms() {
        for (x2, d) in e2.terms() {
            for k1 in 1..=x1.nu() {
                for k2 in 1..=x2.nu() {
                    for (y, f) in a_op(k1, k2, x1, x2, s)?.terms() {
                        out.add(y.clone(), c * d * f)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The product: disjoint union, extended bilinearly.
pub fn star(e1: &GarlandElement, e2: &GarlandElement) -> Result<GarlandElement> {
    let mut out = GarlandElement::zero();
    for (x1, c) in e1.terms() {
        for (x2, d) in e2.terms() {
            out.add(x1.disjoint_union(x2), c * d)?;
        }
    }
    Ok(out)
}

/// Merges each two-circle term `<u, v>` into the free loop `u v`.
pub fn alpha_merge(e: &GarlandElement) -> Result<LoopSum<Rational>> {
    let gamma1 = GarlandGraph::gamma1();
    let mut out = LoopSum::default();
    for (x, c) in e.terms() {
        if x.graph() != &gamma1 {
            return Err(Error::WrongGraph(x.graph().to_string()));
        }
        let [u, v] = x.labels() else { unreachable!() };
        out.add(conjugacy_class(&u.concat(v)), c);
    }
    Ok(out)
}

/// Crossing terms as an element on the two-circle graph.
pub fn pair_element(terms: &[PairTerm]) -> Result<LabeledElement> {
    let mut out = LabeledElement::zero();
    for t in terms {
        out.add(
            TreeGarlandClass::pair(t.u.clone(), t.v.clone())?,
            Rational::from(t.coef as i64),
        )?;
    }
    Ok(out)
}

/// `Σ |c|` over crossing terms after combining equal classes.
pub fn epsilon_raw(terms: &[PairTerm]) -> Result<i64> {
    Ok(pair_element(terms)?.epsilon().to_integer())
}

/// Everything computed on the way to the minimal intersection number.
#[derive(Clone, Debug)]
pub struct MinIntersection {
    pub crossings: Vec<PairTerm>,
    pub reduced: LabeledElement,
    pub bracket: GarlandElement,
    pub epsilon: i64,
    pub epsilon_tilde: Rational,
    pub value: i64,
}

/// Minimal number of intersection points of the free loops `w1` and `w2`,
/// read off the bracket of their classes. Both ways of counting are
/// computed and must agree.
pub fn min_intersection_number(s: &RibbonSurface, w1: &Word, w2: &Word) -> Result<MinIntersection> {
    let c1 = conjugacy_class(w1);
    let c2 = conjugacy_class(w2);
    if c1.is_empty() || c2.is_empty() {
        return Err(Error::TrivialInput("min_intersection_number"));
    }
    let crossings = s.a11_terms(&c1, &c2)?;
    let reduced = pair_element(&crossings)?;
    let epsilon = reduced.epsilon().to_integer();
    let bracket = lie_bracket(&loop_class(w1)?, &loop_class(w2)?, s)?;
    let epsilon_tilde = bracket.expanded()?.epsilon();
    if epsilon_tilde != Rational::from(epsilon) {
        return Err(Error::Verification(format!(
            "epsilon of the crossing terms is {epsilon} but epsilon of the bracket is {epsilon_tilde}"
        )));
    }
    Ok(MinIntersection {
        crossings,
        reduced,
        bracket,
        epsilon,
        epsilon_tilde,
        value: epsilon,
    })
}

/// One term in serialized form; `coef` is always written `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coef: String,
    pub graph: String,
    pub labels: Vec<String>,
}

impl TermRecord {
    pub fn new(key: &TreeGarlandClass, coef: Rational) -> TermRecord {
        TermRecord {
            coef: format!("{}/{}", coef.numer(), coef.denom()),
            graph: key.graph().to_string(),
            labels: key.labels().iter().map(Word::to_string).collect(),
        }
    }

    pub fn parse(&self) -> Result<(TreeGarlandClass, Rational)> {
        let coef = Rational::from_str(&self.coef)
            .map_err(|e| Error::Parse(format!("coefficient `{}`: {e}", self.coef)))?;
        let graph: GarlandGraph = self.graph.parse()?;
        let labels = self
            .labels
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Word>>>()?;
        Ok((TreeGarlandClass::new(graph, labels)?, coef))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub terms: Vec<TermRecord>,
}

impl From<&GarlandElement> for ElementRecord {
    fn from(e: &GarlandElement) -> Self {
        ElementRecord {
            terms: e
                .terms()
                .into_iter()
                .map(|(k, c)| TermRecord::new(k, c))
                .collect(),
        }
    }
}

impl From<&LabeledElement> for ElementRecord {
    fn from(e: &LabeledElement) -> Self {
        ElementRecord {
            terms: e
                .terms()
                .into_iter()
                .map(|(k, c)| TermRecord::new(k, c))
                .collect(),
        }
    }
}

impl ElementRecord {
    pub fn to_element(&self) -> Result<GarlandElement> {
        let mut out = GarlandElement::zero();
        for t in &self.terms {
            let (k, c) = t.parse()?;
            out.add(k, c)?;
        }
        Ok(out)
    }

    pub fn epsilon(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in &self.terms {
            acc += t.parse()?.1.abs();
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pair(u: &str, v: &str) -> TreeGarlandClass {
        TreeGarlandClass::pair(w(u), w(v)).unwrap()
    }

    fn surface(name: &str) -> RibbonSurface {
        RibbonSurface::builtin(name).unwrap()
    }

    #[test]
    fn loop_classes() {
        assert!(loop_class(&w("aBB"))
            .unwrap()
            .equals(&loop_class(&w("BBa")).unwrap())
            .unwrap());
        assert_eq!(
            loop_class(&Word::identity()).unwrap_err(),
            Error::TrivialInput("loop_class")
        );
    }

    #[test]
    fn chord_diagrams() {
        let one = ChordDiagram {
            loops: vec![w("a")],
            chords: vec![],
        };
        assert!(chord_diagram_class(&one)
            .unwrap()
            .equals(&loop_class(&w("a")).unwrap())
            .unwrap());
        let two = ChordDiagram {
            loops: vec![w("ab"), w("b")],
            chords: vec![(1, 2)],
        };
        let e = chord_diagram_class(&two).unwrap();
        assert_eq!(e.coefficient(&pair("ab", "b")).unwrap(), r(1, 1));
        for chords in [
            vec![(1, 1)],
            vec![(1, 2), (2, 1)],
            vec![(1, 2), (2, 3), (1, 3)],
        ] {
            let d = ChordDiagram {
                loops: vec![w("a"), w("b"), w("ab")],
                chords,
            };
            assert!(matches!(
                chord_diagram_class(&d),
                Err(Error::NotTreeLike(_))
            ));
        }
    }

    #[test]
    fn torus_generators() {
        let s = surface("torus1");
        let e = a_op(
            1,
            1,
            &TreeGarlandClass::circle(w("a")).unwrap(),
            &TreeGarlandClass::circle(w("b")).unwrap(),
            &s,
        )
        .unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.coefficient(&pair("a", "b")).unwrap(), r(-1, 1));
    }

    #[test]
    fn section13_pair_reduces_to_two_classes() {
        let s = surface("section13");
        let x1 = TreeGarlandClass::circle(w("aBB")).unwrap();
        let x2 = TreeGarlandClass::circle(w("aB")).unwrap();
        let e = a_op(1, 1, &x1, &x2, &s).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coefficient(&pair("BBa", "aB")).unwrap(), r(1, 1));
        assert_eq!(e.coefficient(&pair("aBB", "Ba")).unwrap(), r(-1, 1));
        let b = lie_bracket(
            &loop_class(&w("aBB")).unwrap(),
            &loop_class(&w("aB")).unwrap(),
            &s,
        )
        .unwrap();
        let x = b.expanded().unwrap();
        assert_eq!(x.len(), 4);
        assert_eq!(x.coefficient(&pair("aB", "BBa")).unwrap(), r(1, 2));
        assert_eq!(x.coefficient(&pair("Ba", "aBB")).unwrap(), r(-1, 2));
        assert_eq!(x.epsilon(), r(2, 1));
        assert!(alpha_merge(&b).unwrap().is_zero());
    }

    #[test]
    fn index_and_root_errors() {
        let s = surface("torus1");
        let x = TreeGarlandClass::circle(w("a")).unwrap();
        assert_eq!(
            a_op(2, 1, &x, &x, &s).unwrap_err(),
            Error::IndexOutOfRange { index: 2, nu: 1 }
        );
        assert!(matches!(
            a_op(1, 1, &x, &x, &s),
            Err(Error::CommonRoot { .. })
        ));
        assert!(matches!(
            min_intersection_number(&s, &w("ab"), &w("BA")),
            Err(Error::CommonRoot { .. })
        ));
    }

    #[test]
    fn shells_are_respected() {
        // A non-cyclically-reduced label gives the same classes as its core.
        let s = surface("torus1");
        let x1 = TreeGarlandClass::circle(w("bab")).unwrap();
        let x2 = TreeGarlandClass::circle(w("a").conjugate_by(&w("b"))).unwrap();
        let y1 = TreeGarlandClass::circle(w("abb")).unwrap();
        let y2 = TreeGarlandClass::circle(w("a")).unwrap();
        let e = a_op(1, 1, &x1, &x2, &s).unwrap();
        let f = a_op(1, 1, &y1, &y2, &s).unwrap();
        assert!(e.equals(&f).unwrap());
    }

    #[test]
    fn min_int_examples() {
        let s = surface("torus1");
        assert_eq!(
            min_intersection_number(&s, &w("a"), &w("b")).unwrap().value,
            1
        );
        assert_eq!(
            min_intersection_number(&s, &w("ab"), &w("aB"))
                .unwrap()
                .value,
            2
        );
        let m = min_intersection_number(&surface("section13"), &w("aBB"), &w("aB")).unwrap();
        assert_eq!(m.value, 2);
        assert_eq!(m.epsilon_tilde, r(2, 1));
    }

    #[test]
    fn alpha_merge_needs_pairs() {
        let e = loop_class(&w("a")).unwrap();
        assert!(matches!(alpha_merge(&e), Err(Error::WrongGraph(_))));
        let mut sym = GarlandElement::zero();
        sym.add(pair("ab", "b"), r(1, 2)).unwrap();
        sym.add(pair("b", "ab"), r(1, 2)).unwrap();
        let m = alpha_merge(&sym).unwrap();
        assert_eq!(
            m.terms().collect::<Vec<_>>(),
            vec![(&conjugacy_class(&w("abb")), r(1, 1))]
        );
    }

    #[test]
    fn star_with_zero() {
        assert!(star(&loop_class(&w("a")).unwrap(), &GarlandElement::zero())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn record_round_trip() {
        let s = surface("section13");
        let b = lie_bracket(
            &loop_class(&w("aBB")).unwrap(),
            &loop_class(&w("aB")).unwrap(),
            &s,
        )
        .unwrap();
        let rec = ElementRecord::from(&b);
        assert!(rec.to_element().unwrap().equals(&b).unwrap());
        assert_eq!(rec.terms[0].coef.split('/').count(), 2);
    }
}
