//! Commutative polynomials over `F_p` in `x1..xn`: the coefficient ring of the
//! polynomial Weyl algebra, together with the partial derivatives that act on it.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommPolynomial {
    p: u32,
    n_vars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl CommPolynomial {
    pub fn zero(p: u32, n_vars: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            n_vars,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(p: u32, n_vars: usize, c: u32) -> Result<Self> {
        Self::from_terms(p, n_vars, [(Monomial::one(n_vars), c)])
    }

    /// The variable `x_i`, 1-based like the printed form.
    pub fn var(p: u32, n_vars: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n_vars {
            return Err(Error::VariableOutOfRange { index: i, n_vars });
        }
        Self::from_terms(p, n_vars, [(Monomial::unit(n_vars, i - 1, 1), 1)])
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(
        p: u32,
        n_vars: usize,
        terms: impl IntoIterator<Item = (Monomial, u32)>,
    ) -> Result<Self> {
        let mut out = Self::zero(p, n_vars)?;
        for (m, c) in terms {
            if m.n_vars() != n_vars {
                return Err(Error::VariableOutOfRange {
                    index: m.n_vars(),
                    n_vars,
                });
            }
            out.add_term(m, c % p);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.n_vars != other.n_vars {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), p - c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), (a as u64 * c as u64 % p) as u32);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let p = self.p as u64;
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (ma, &a) in &self.terms {
            for (mb, &b) in &other.terms {
                out.add_term(ma.mul(mb), (a as u64 * b as u64 % p) as u32);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `x_i` (1-based).
    pub fn partial(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n_vars {
            return Err(Error::VariableOutOfRange {
                index: i,
                n_vars: self.n_vars,
            });
        }
        let p = self.p as u64;
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (m, &c) in &self.terms {
            let e = m.0[i - 1];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i - 1] -= 1;
            out.add_term(dm, ((e as u64 % p) * c as u64 % p) as u32);
        }
        Ok(out)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }
}

pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: &str,
    names: &[String],
    exps: &[u32],
) -> fmt::Result {
    f.write_str(coeff)?;
    for (name, &e) in names.iter().zip(exps) {
        if e > 0 {
            write!(f, "*{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for CommPolynomial {
    /// `<coeff>*x1^e1*...*xn^en` terms joined by ` + `, highest monomial first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names: Vec<String> = (1..=self.n_vars).map(|i| format!("x{i}")).collect();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write_term(f, &c.to_string(), &names, m.exponents())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn x(p: u32, n: usize, i: usize) -> CommPolynomial {
        CommPolynomial::var(p, n, i).unwrap()
    }

    fn c(p: u32, n: usize, v: u32) -> CommPolynomial {
        CommPolynomial::constant(p, n, v).unwrap()
    }

    fn random(rng: &mut ChaCha20Rng, p: u32, n: usize) -> CommPolynomial {
        let terms: Vec<(Monomial, u32)> = (0..rng.random_range(0..5))
            .map(|_| {
                let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..4)).collect();
                (Monomial::new(&e), rng.random_range(0..p))
            })
            .collect();
        CommPolynomial::from_terms(p, n, terms).unwrap()
    }

    #[test]
    fn product_examples() {
        let a = x(5, 1, 1).add(&c(5, 1, 1)).unwrap();
        let b = x(5, 1, 1).add(&c(5, 1, 4)).unwrap();
        let expected = x(5, 1, 1).mul(&x(5, 1, 1)).unwrap().add(&c(5, 1, 4)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert_eq!(c(5, 1, 1).mul(&a).unwrap(), a);
        let xy = x(5, 2, 1).mul(&x(5, 2, 2)).unwrap();
        assert_eq!(xy.to_string(), "1*x1^1*x2^1");
    }

    #[test]
    fn partial_examples() {
        let x1 = x(5, 2, 1);
        let x2 = x(5, 2, 2);
        let sq = x1.mul(&x1).unwrap();
        assert_eq!(sq.partial(1).unwrap(), x1.scale(2));
        let cube = x2.mul(&x2).unwrap().mul(&x2).unwrap();
        assert!(cube.partial(1).unwrap().is_zero());
        let fifth = (0..4).fold(x1.clone(), |acc, _| acc.mul(&x1).unwrap());
        assert!(fifth.partial(1).unwrap().is_zero());
        assert_eq!(
            x1.partial(3),
            Err(Error::VariableOutOfRange { index: 3, n_vars: 2 })
        );
    }

    #[test]
    fn mismatched_rings() {
        assert_eq!(x(5, 2, 1).mul(&x(7, 2, 1)), Err(Error::RingMismatch));
        assert_eq!(x(5, 2, 1).add(&x(5, 3, 1)), Err(Error::RingMismatch));
    }

    #[test]
    fn leibniz_and_ring_axioms() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..300 {
            let (a, b, d) = (random(&mut rng, 7, 3), random(&mut rng, 7, 3), random(&mut rng, 7, 3));
            for i in 1..=3 {
                let lhs = a.mul(&b).unwrap().partial(i).unwrap();
                let rhs = a
                    .mul(&b.partial(i).unwrap())
                    .unwrap()
                    .add(&a.partial(i).unwrap().mul(&b).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(
                    a.add(&b).unwrap().partial(i).unwrap(),
                    a.partial(i).unwrap().add(&b.partial(i).unwrap()).unwrap()
                );
            }
            assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            assert_eq!(
                a.mul(&b.add(&d).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&d).unwrap()).unwrap()
            );
        }
    }
}
