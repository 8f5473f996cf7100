//! Exponent vectors under the graded reverse-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u32; 6]>;

/// An exponent vector. The total order is graded reverse-lexicographic:
/// higher total degree wins, ties are broken by the *last* differing entry,
/// where the smaller exponent is the larger monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub(crate) Exponents);

impl Monomial {
    pub fn new(exponents: &[u32]) -> Self {
        Self(SmallVec::from_slice(exponents))
    }

    pub fn one(n_vars: usize) -> Self {
        Self(SmallVec::from_elem(0, n_vars))
    }

    /// The monomial with a single exponent `e` in position `var`.
    pub fn unit(n_vars: usize, var: usize, e: u32) -> Self {
        let mut m = Self::one(n_vars);
        m.0[var] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self` componentwise.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Exponents>>()
            .map(Self)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(&other.0).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Every monomial in `n_vars` variables of total degree exactly `degree`,
/// in ascending order.
pub fn monomials_of_degree(n_vars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(Monomial::new(current));
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(pos + 1, left - e, current, out);
        }
    }
    if n_vars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut current, &mut out);
    out.sort();
    out
}

/// Number of monomials in `n_vars` variables of total degree at most `degree`,
/// saturating at `u64::MAX`.
pub fn count_up_to_degree(n_vars: usize, degree: u32) -> u64 {
    // C(degree + n_vars, n_vars)
    let mut acc: u128 = 1;
    for i in 1..=n_vars as u128 {
        acc = acc * (degree as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
