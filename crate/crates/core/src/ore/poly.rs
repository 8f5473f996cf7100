use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;

use super::mul;
use super::ring::{OreRing, RingKind};

/// Per-variable degrees in `d1..dn` together with the total degree of the
/// leading monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    pub per_var: Vec<u32>,
    pub total: u32,
}

/// An element of an [`OreRing`] in normal form: a sum of `c * x^a * d^b`
/// with the coefficient on the left.
///
/// Terms are kept sorted in descending monomial order with nonzero
/// coefficients. A coefficient is stored as a field-element index in skew
/// rings and as a residue mod `p` in Weyl algebras.
#[derive(Debug, Clone)]
pub struct OrePolynomial {
    pub(crate) ring: Arc<OreRing>,
    pub(crate) terms: Vec<(Monomial, u32)>,
}

impl PartialEq for OrePolynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for OrePolynomial {}

impl OrePolynomial {
    pub fn zero(ring: &Arc<OreRing>) -> Self {
        Self {
            ring: Arc::clone(ring),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<OreRing>) -> Self {
        Self::constant(ring, 1)
    }

    /// A constant from its stored coefficient value.
    pub fn constant(ring: &Arc<OreRing>, c: u32) -> Self {
        Self::from_terms(ring, [(Monomial::one(ring.n_exponents()), c)])
            .expect("constant monomial has the right length")
    }

    /// Embeds an element of the coefficient field (skew) or prime field (Weyl).
    pub fn from_field_element(ring: &Arc<OreRing>, a: &FieldElement) -> Result<Self> {
        if a.spec() != ring.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::constant(ring, a.index() as u32))
    }

    /// The Ore variable `d_i` (1-based).
    pub fn ore_var(ring: &Arc<OreRing>, i: usize) -> Result<Self> {
        let n = ring.n_ore_vars();
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { index: i, n_vars: n });
        }
        let offset = ring.n_exponents() - n;
        Self::from_terms(ring, [(Monomial::unit(ring.n_exponents(), offset + i - 1, 1), 1)])
    }

    /// The commutative variable `x_i` (1-based) of a Weyl algebra.
    pub fn x_var(ring: &Arc<OreRing>, i: usize) -> Result<Self> {
        if ring.kind() != RingKind::Weyl {
            return Err(Error::InvalidRing("skew rings have no x variables".into()));
        }
        let n = ring.n_ore_vars();
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { index: i, n_vars: n });
        }
        Self::from_terms(ring, [(Monomial::unit(2 * n, i - 1, 1), 1)])
    }

    /// Sums like terms, reduces coefficients, drops zeros.
    pub fn from_terms(
        ring: &Arc<OreRing>,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Result<Self> {
        let len = ring.n_exponents();
        let order = ring.coefficient_order();
        let mut acc: std::collections::BTreeMap<Monomial, u32> = Default::default();
        for (m, c) in terms {
            if m.n_vars() != len {
                return Err(Error::VariableOutOfRange {
                    index: m.n_vars(),
                    n_vars: len,
                });
            }
            let c = match ring.kind() {
                RingKind::Weyl => c % order,
                RingKind::Skew if c < order => c,
                RingKind::Skew => {
                    return Err(Error::Parse(format!("coefficient index {c} outside F_{order}")))
                }
            };
            let slot = acc.entry(m).or_insert(0);
            *slot = ring.coeffs.add(*slot, c);
        }
        Ok(Self::from_ascending_map(ring, acc))
    }

    pub(crate) fn from_ascending_map(
        ring: &Arc<OreRing>,
        map: std::collections::BTreeMap<Monomial, u32>,
    ) -> Self {
        Self {
            ring: Arc::clone(ring),
            terms: map.into_iter().rev().filter(|(_, c)| *c != 0).collect(),
        }
    }

    /// Caller guarantees descending order, distinct monomials, nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Arc<OreRing>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        Self {
            ring: Arc::clone(ring),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<OreRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Coefficient of `m` as a field element.
    pub fn coeff_element(&self, m: &Monomial) -> FieldElement {
        self.ring.field().from_index(self.coeff(m) as u64)
    }

    /// Total degree of the leading monomial; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.total_degree())
    }

    /// Maximal exponent of each `d_i` over all terms plus the total degree;
    /// `None` for the zero polynomial.
    pub fn degree_profile(&self) -> Option<DegreeProfile> {
        let n = self.ring.n_ore_vars();
        let offset = self.ring.n_exponents() - n;
        let (lead, _) = self.terms.first()?;
        let mut per_var = vec![0; n];
        for (m, _) in &self.terms {
            for (d, &e) in per_var.iter_mut().zip(&m.exponents()[offset..]) {
                *d = (*d).max(e);
            }
        }
        Some(DegreeProfile {
            per_var,
            total: lead.total_degree(),
        })
    }

    /// Maximal exponent of every stored variable over all terms.
    pub(crate) fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.n_exponents()];
        for (m, _) in &self.terms {
            for (d, &e) in out.iter_mut().zip(m.exponents()) {
                *d = (*d).max(e);
            }
        }
        out
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Merges two sorted term lists, combining coefficients with `f`.
    fn merge(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            let (m, c) = match ord {
                Ordering::Greater => {
                    i += 1;
                    (a[i - 1].0.clone(), f(a[i - 1].1, 0))
                }
                Ordering::Less => {
                    j += 1;
                    (b[j - 1].0.clone(), f(0, b[j - 1].1))
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a[i - 1].0.clone(), f(a[i - 1].1, b[j - 1].1))
                }
            };
            if c != 0 {
                out.push((m, c));
            }
        }
        Self::from_sorted(&self.ring, out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let k = &self.ring.coeffs;
        Ok(self.merge(other, |x, y| k.add(x, y)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let k = &self.ring.coeffs;
        Ok(self.merge(other, |x, y| k.sub(x, y)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(mul::product(self, other))
    }

    /// Left multiplication by the constant with stored value `c`.
    pub fn scale(&self, c: u32) -> Self {
        let k = &self.ring.coeffs;
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), k.mul(c, *a)))
            .filter(|(_, a)| *a != 0)
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self * other == other * self`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.try_mul(other)? == other.try_mul(self)?)
    }
}

impl Neg for &OrePolynomial {
    type Output = OrePolynomial;

    fn neg(self) -> OrePolynomial {
        let k = &self.ring.coeffs;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), k.neg(*c))).collect();
        OrePolynomial::from_sorted(&self.ring, terms)
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different rings; use the `try_`
        /// method to get an error instead.
        impl $trait<&OrePolynomial> for &OrePolynomial {
            type Output = OrePolynomial;

            fn $method(self, rhs: &OrePolynomial) -> OrePolynomial {
                self.$checked(rhs).expect("operands from the same ring")
            }
        }

        impl $trait<OrePolynomial> for OrePolynomial {
            type Output = OrePolynomial;

            fn $method(self, rhs: OrePolynomial) -> OrePolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);
binary_op!(Mul, mul, try_mul);
