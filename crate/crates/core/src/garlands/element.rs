use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use super::class::{class_equal, equivalent_up_to_relabeling, TreeGarlandClass};
use crate::error::Result;
use crate::graphcalc::CircleRelabeling;

pub type Rational = Rational64;

type Invariant = Vec<Vec<(crate::fgroup::CyclicWord, usize)>>;

#[derive(Clone, Debug, Default)]
struct Terms {
    terms: Vec<(Invariant, TreeGarlandClass, Rational)>,
}

impl Terms {
    fn add(
        &mut self,
        key: TreeGarlandClass,
        coef: Rational,
        same: fn(&TreeGarlandClass, &TreeGarlandClass) -> Result<bool>,
    ) -> Result<()> {
        if coef.is_zero() {
            return Ok(());
        }
        let inv = key.invariant();
        for i in 0..self.terms.len() {
            let (ref other_inv, ref other, _) = self.terms[i];
            if *other_inv == inv && same(other, &key)? {
                self.terms[i].2 += coef;
                if self.terms[i].2.is_zero() {
                    self.terms.remove(i);
                }
                return Ok(());
            }
        }
        self.terms.push((inv, key, coef));
        Ok(())
    }

    fn sorted(&self) -> Vec<(&TreeGarlandClass, Rational)> {
        let mut v: Vec<(&TreeGarlandClass, Rational)> =
            self.terms.iter().map(|(_, k, c)| (k, *c)).collect();
        v.sort_by_cached_key(|(k, c)| (k.nu(), k.graph().clone(), k.to_string(), *c));
        v
    }
}

/// A rational combination of symmetrized garland classes. A stored term
/// `c · x` stands for `c` times the average of `x` over all circle
/// relabelings, so keys are compared up to relabeling and moves.
#[derive(Clone, Debug, Default)]
pub struct GarlandElement {
    terms: Terms,
}

impl GarlandElement {
    pub fn zero() -> GarlandElement {
        GarlandElement::default()
    }

    pub fn single(key: TreeGarlandClass, coef: Rational) -> GarlandElement {
        let mut e = GarlandElement::zero();
        e.add(key, coef).expect("single term");
        e
    }

    pub fn add(&mut self, key: TreeGarlandClass, coef: Rational) -> Result<()> {
        self.terms.add(key, coef, equivalent_up_to_relabeling)
    }

    /// `self + k * other`.
    pub fn add_scaled(&mut self, other: &GarlandElement, k: Rational) -> Result<()> {
        for (_, key, c) in &other.terms.terms {
            self.add(key.clone(), *c * k)?;
        }
        Ok(())
    }

    pub fn scaled(&self, k: Rational) -> Result<GarlandElement> {
        let mut out = GarlandElement::zero();
        out.add_scaled(self, k)?;
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in a deterministic order.
    pub fn terms(&self) -> Vec<(&TreeGarlandClass, Rational)> {
        self.terms.sorted()
    }

    /// Coefficient of the class of `key`, zero if absent.
    pub fn coefficient(&self, key: &TreeGarlandClass) -> Result<Rational> {
        for (_, k, c) in &self.terms.terms {
            if equivalent_up_to_relabeling(k, key)? {
                return Ok(*c);
            }
        }
        Ok(Rational::zero())
    }

    pub fn equals(&self, other: &GarlandElement) -> Result<bool> {
        let mut d = self.clone();
        d.add_scaled(other, -Rational::from(1))?;
        Ok(d.is_zero())
    }

    /// The symmetrization written out: every distinct relabeled image of a
    /// stored key, with its share of the coefficient.
    pub fn expanded(&self) -> Result<LabeledElement> {
        let mut out = LabeledElement::zero();
        for (_, key, c) in &self.terms.terms {
            let perms = CircleRelabeling::all(key.nu());
            let share = *c / Rational::from(perms.len() as i64);
            for alpha in perms {
                out.add(key.relabel(&alpha), share)?;
            }
        }
        Ok(out)
    }

    /// Sum of absolute values of the coefficients.
    pub fn epsilon(&self) -> Rational {
        self.terms
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (_, _, c)| acc + c.abs())
    }
}

/// A rational combination of garland classes on labeled graphs; terms are
/// combined only when they are move-equivalent with the same numbering.
#[derive(Clone, Debug, Default)]
pub struct LabeledElement {
    terms: Terms,
}

impl LabeledElement {
    pub fn zero() -> LabeledElement {
        LabeledElement::default()
    }

    pub fn add(&mut self, key: TreeGarlandClass, coef: Rational) -> Result<()> {
        self.terms.add(key, coef, class_equal)
    }

    pub fn add_scaled(&mut self, other: &LabeledElement, k: Rational) -> Result<()> {
        for (_, key, c) in &other.terms.terms {
            self.add(key.clone(), *c * k)?;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> Vec<(&TreeGarlandClass, Rational)> {
        self.terms.sorted()
    }

    pub fn coefficient(&self, key: &TreeGarlandClass) -> Result<Rational> {
        for (_, k, c) in &self.terms.terms {
            if class_equal(k, key)? {
                return Ok(*c);
            }
        }
        Ok(Rational::zero())
    }

    pub fn equals(&self, other: &LabeledElement) -> Result<bool> {
        let mut d = self.clone();
        d.add_scaled(other, -Rational::from(1))?;
        Ok(d.is_zero())
    }

    pub fn relabel(&self, alpha: &CircleRelabeling) -> Result<LabeledElement> {
        let mut out = LabeledElement::zero();
        for (_, key, c) in &self.terms.terms {
            out.add(key.relabel(alpha), *c)?;
        }
        Ok(out)
    }

    /// Passes to the relabeling quotient.
    pub fn symmetrized(&self) -> Result<GarlandElement> {
        let mut out = GarlandElement::zero();
        for (_, key, c) in &self.terms.terms {
            out.add(key.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn epsilon(&self) -> Rational {
        self.terms
            .terms
            .iter()
            .fold(Rational::zero(), |acc, (_, _, c)| acc + c.abs())
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: Vec<(&TreeGarlandClass, Rational)>,
) -> fmt::Result {
    if terms.is_empty() {
        return writeln!(f, "0");
    }
    for (k, c) in terms {
        writeln!(f, "{c} * {k}")?;
    }
    Ok(())
}

impl fmt::Display for GarlandElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

impl fmt::Display for LabeledElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}
