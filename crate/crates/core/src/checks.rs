//! Identity checks shared by the test suites and the command line: the
//! graph composition laws, the algebra identities on sampled loops, and the
//! walkthrough of the two-loop example on `section13`.

use std::fmt;

use num_traits::One;

use crate::error::Result;
use crate::fgroup::{conjugacy_class, Word};
use crate::garlands::{
    alpha_merge, lie_bracket, loop_class, min_intersection_number, pair_element, star,
    GarlandElement, LabeledElement, Rational, TreeGarlandClass,
};
use crate::graphcalc::{compose_b, compose_d, permute, CircleRelabeling, GarlandGraph};
use crate::surface::{section13_drawing, LoopSum, RibbonSurface};

/// Failed instances of the composition laws over every index choice.
#[derive(Clone, Debug, Default)]
pub struct GraphCheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl GraphCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, law: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(format!("{law}: {}", detail()));
        }
    }
}

pub fn check_graph_laws(
    g1: &GarlandGraph,
    g2: &GarlandGraph,
    g3: &GarlandGraph,
) -> Result<GraphCheckReport> {
    let (n1, n2, n3) = (g1.nu(), g2.nu(), g3.nu());
    let mut r = GraphCheckReport::default();

    for k1 in 1..=n1 {
        for k2 in 1..=n2 {
            for kb2 in 1..=n2 {
                for k3 in 1..=n3 {
                    let lhs = compose_b(&compose_b(g1, g2, k1, k2)?, g3, n1 + kb2, k3)?;
                    let inner = compose_b(&compose_b(g2, g3, kb2, k3)?, g1, k2, k1)?;
                    let rhs = permute(&CircleRelabeling::swap_blocks(n1, n2 + n3), &inner);
                    r.record("B associativity", lhs == rhs, || {
                        format!("{k1},{k2},{kb2},{k3}: {lhs} vs {rhs}")
                    });
                }
            }
            let lhs = compose_b(g1, g2, k1, k2)?;
            let rhs = permute(
                &CircleRelabeling::swap_blocks(n1, n2),
                &compose_b(g2, g1, k2, k1)?,
            );
            r.record("B commutativity", lhs == rhs, || {
                format!("{k1},{k2}: {lhs} vs {rhs}")
            });

            let lhs = compose_b(g1, &compose_d(g2, g3), k1, k2)?;
            let rhs = compose_d(&compose_b(g1, g2, k1, k2)?, g3);
            r.record("B into the first factor of D", lhs == rhs, || {
                format!("{k1},{k2}: {lhs} vs {rhs}")
            });
        }
        for k3 in 1..=n3 {
            let lhs = compose_b(g1, &compose_d(g2, g3), k1, n2 + k3)?;
            let rhs = permute(
                &CircleRelabeling::swap_first_blocks(n1, n2, n3),
                &compose_d(g2, &compose_b(g1, g3, k1, k3)?),
            );
            r.record("B into the second factor of D", lhs == rhs, || {
                format!("{k1},{k3}: {lhs} vs {rhs}")
            });
        }
    }

    let lhs = compose_d(&compose_d(g1, g2), g3);
    let rhs = compose_d(g1, &compose_d(g2, g3));
    r.record("D associativity", lhs == rhs, || format!("{lhs} vs {rhs}"));
    let lhs = compose_d(g1, g2);
    let rhs = permute(&CircleRelabeling::swap_blocks(n1, n2), &compose_d(g2, g1));
    r.record("D commutativity", lhs == rhs, || format!("{lhs} vs {rhs}"));
    for g in [&compose_d(g1, g2), &compose_d(&compose_d(g1, g2), g3)] {
        r.record("composite validates", g.validate().is_ok(), || {
            g.to_string()
        });
    }
    Ok(r)
}

/// `[e1,e2] + [e2,e1]`.
pub fn antisymmetry_defect(
    e1: &GarlandElement,
    e2: &GarlandElement,
    s: &RibbonSurface,
) -> Result<GarlandElement> {
    let mut d = lie_bracket(e1, e2, s)?;
    d.add_scaled(&lie_bracket(e2, e1, s)?, Rational::one())?;
    Ok(d)
}

/// `[[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2]`.
pub fn jacobi_sum(
    e1: &GarlandElement,
    e2: &GarlandElement,
    e3: &GarlandElement,
    s: &RibbonSurface,
) -> Result<GarlandElement> {
    let mut d = GarlandElement::zero();
    for (a, b, c) in [(e1, e2, e3), (e2, e3, e1), (e3, e1, e2)] {
        d.add_scaled(&lie_bracket(&lie_bracket(a, b, s)?, c, s)?, Rational::one())?;
    }
    Ok(d)
}

/// `[e1, e2 * e3] - [e1,e2] * e3 - e2 * [e1,e3]`.
pub fn leibniz_defect(
    e1: &GarlandElement,
    e2: &GarlandElement,
    e3: &GarlandElement,
    s: &RibbonSurface,
) -> Result<GarlandElement> {
    let mut d = lie_bracket(e1, &star(e2, e3)?, s)?;
    d.add_scaled(&star(&lie_bracket(e1, e2, s)?, e3)?, -Rational::one())?;
    d.add_scaled(&star(e2, &lie_bracket(e1, e3, s)?)?, -Rational::one())?;
    Ok(d)
}

/// `alpha_merge([w1, w2]) + goldman(w1, w2)`, which should vanish.
pub fn goldman_defect(s: &RibbonSurface, w1: &Word, w2: &Word) -> Result<LoopSum<Rational>> {
    let merged = alpha_merge(&lie_bracket(&loop_class(w1)?, &loop_class(w2)?, s)?)?;
    let g = s.goldman_bracket(&conjugacy_class(w1), &conjugacy_class(w2))?;
    let mut d = merged;
    for (k, c) in g.terms() {
        d.add(k.clone(), Rational::from(c));
    }
    Ok(d)
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

/// Expected-versus-actual lines for the two loops `aBB` and `aB` on
/// `section13`.
#[derive(Clone, Debug)]
pub struct Section13Report {
    pub comparisons: Vec<Comparison>,
}

impl Section13Report {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Section13Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comparisons {
            writeln!(f, "[{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name)?;
            writeln!(f, "    expected: {}", c.expected)?;
            writeln!(f, "    actual:   {}", c.actual)?;
        }
        Ok(())
    }
}

fn w(s: &str) -> Word {
    s.parse().expect("fixed word")
}

fn pair(u: &str, v: &str) -> TreeGarlandClass {
    TreeGarlandClass::pair(w(u), w(v)).expect("fixed pair")
}

fn labeled(terms: &[(i64, i64, &str, &str)]) -> Result<LabeledElement> {
    let mut e = LabeledElement::zero();
    for &(n, d, u, v) in terms {
        e.add(pair(u, v), Rational::new(n, d))?;
    }
    Ok(e)
}

fn one_line(e: &impl fmt::Display) -> String {
    e.to_string().trim_end().replace('\n', " ; ")
}

pub fn section13_walkthrough() -> Result<Section13Report> {
    let s = RibbonSurface::builtin("section13").expect("builtin surface");
    let (w1, w2) = (w("aBB"), w("aB"));
    let (c1, c2) = (conjugacy_class(&w1), conjugacy_class(&w2));
    let mut out = Vec::new();
    let mut push = |name, expected: String, actual: String, passed| {
        out.push(Comparison {
            name,
            expected,
            actual,
            passed,
        })
    };

    let drawn = s.drawn_a11_terms(&c1, &c2, &section13_drawing())?;
    let mut got: Vec<(i32, String, String)> = drawn
        .iter()
        .map(|t| (t.coef, t.u.to_string(), t.v.to_string()))
        .collect();
    got.sort();
    let mut want: Vec<(i32, String, String)> = [
        (1, "BBa", "aB"),
        (-1, "aBB", "Ba"),
        (-1, "aBB", "aB"),
        (1, "BaB", "aB"),
    ]
    .iter()
    .map(|&(c, u, v)| (c, u.to_string(), v.to_string()))
    .collect();
    want.sort();
    let fmt_terms = |v: &[(i32, String, String)]| {
        v.iter()
            .map(|(c, u, v)| format!("{}<{u},{v}>", if *c > 0 { "+" } else { "-" }))
            .collect::<Vec<_>>()
            .join(" ")
    };
    push(
        "crossing terms of the drawing",
        fmt_terms(&want),
        fmt_terms(&got),
        got == want,
    );

    let reduced = pair_element(&drawn)?;
    let expected = labeled(&[(1, 1, "BBa", "aB"), (-1, 1, "aBB", "Ba")])?;
    push(
        "crossing terms after class reduction",
        one_line(&expected),
        one_line(&reduced),
        reduced.equals(&expected)?,
    );

    let tight = pair_element(&s.a11_terms(&c1, &c2)?)?;
    push(
        "reduced terms of the minimal position",
        one_line(&expected),
        one_line(&tight),
        tight.equals(&expected)?,
    );

    let conj = crate::garlands::class_equal(&pair("BaB", "aB"), &pair("aBB", "aB"))?;
    push(
        "<BaB,aB> = <aBB,aB> after conjugating by aB",
        "true".into(),
        conj.to_string(),
        conj,
    );
    let distinct = !crate::garlands::class_equal(&pair("BBa", "aB"), &pair("aBB", "Ba"))?;
    push(
        "<BBa,aB> and <aBB,Ba> are different classes",
        "true".into(),
        distinct.to_string(),
        distinct,
    );

    let eps = reduced.epsilon();
    push(
        "epsilon",
        "2".into(),
        eps.to_string(),
        eps == Rational::from(2),
    );

    let bracket = lie_bracket(&loop_class(&w1)?, &loop_class(&w2)?, &s)?;
    let expanded = bracket.expanded()?;
    let expected = labeled(&[
        (1, 2, "BBa", "aB"),
        (-1, 2, "aBB", "Ba"),
        (1, 2, "aB", "BBa"),
        (-1, 2, "Ba", "aBB"),
    ])?;
    push(
        "bracket",
        one_line(&expected),
        one_line(&expanded),
        expanded.equals(&expected)? && expanded.len() == 4,
    );
    let eps_t = expanded.epsilon();
    push(
        "epsilon of the bracket",
        "2".into(),
        eps_t.to_string(),
        eps_t == Rational::from(2),
    );

    let goldman = s.goldman_bracket(&c1, &c2)?;
    push(
        "Goldman bracket",
        "0".into(),
        goldman.to_string(),
        goldman.is_zero(),
    );

    let merged = alpha_merge(&bracket)?;
    let minus_goldman = goldman.map(|c| -Rational::from(c));
    push(
        "merged bracket equals minus the Goldman bracket",
        minus_goldman.to_string(),
        merged.to_string(),
        merged == minus_goldman,
    );

    let m = min_intersection_number(&s, &w1, &w2)?;
    push(
        "minimal intersection number",
        "2".into(),
        m.value.to_string(),
        m.value == 2,
    );

    Ok(Section13Report { comparisons: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    #[test]
    fn walkthrough_passes() {
        let r = section13_walkthrough().unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn graph_laws_on_samples() {
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let (a, b, c) = (s.graph(3), s.graph(3), s.graph(3));
            let r = check_graph_laws(&a, &b, &c).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }

    #[test]
    fn wrong_permutation_is_caught() {
        // The commutativity law fails without the block swap once the
        // factors differ.
        let a = GarlandGraph::gamma1();
        let b = GarlandGraph::gamma0();
        assert_ne!(compose_d(&a, &b), compose_d(&b, &a));
    }

    #[test]
    fn small_identities() {
        let s = RibbonSurface::builtin("torus1").unwrap();
        let e = |x: &str| loop_class(&w(x)).unwrap();
        assert!(antisymmetry_defect(&e("ab"), &e("aB"), &s)
            .unwrap()
            .is_zero());
        assert!(jacobi_sum(&e("a"), &e("b"), &e("ab"), &s)
            .unwrap()
            .is_zero());
        assert!(leibniz_defect(&e("a"), &e("b"), &e("aB"), &s)
            .unwrap()
            .is_zero());
        assert!(goldman_defect(&s, &w("ab"), &w("aB")).unwrap().is_zero());
    }
}
