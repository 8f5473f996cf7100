use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::comm_poly::CommPolynomial;
use crate::error::{Error, Result};
use crate::field::{
    fmt_vec, inv_mod, is_prime, parse_u32, parse_vec, Automorphism, FieldSpec, FieldTables,
};

/// The two families of iterated Ore extensions this crate computes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_q[d1; s1]...[dn; sn]` with Frobenius powers `si` and zero derivations.
    Skew,
    /// The polynomial Weyl algebra over `F_p`: identity twists, `di = d/dxi`.
    Weyl,
}

/// The `delta` half of a quasi-derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derivation {
    Zero,
    /// Partial derivative with respect to `x_i` (1-based) of the coefficient ring.
    Partial(usize),
}

/// Action `(sigma, delta)` attached to one Ore variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuasiDerivation {
    pub sigma: Automorphism,
    pub delta: Derivation,
}

/// Coefficient ring `R` of the extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseRing {
    Field(Arc<FieldSpec>),
    /// `F_p[x1..xn]`
    Polynomial { p: u32, n_vars: usize },
}

/// Scalar arithmetic on stored coefficients: field-element indices for skew
/// rings, residues mod `p` for Weyl algebras.
#[derive(Debug, Clone)]
pub(crate) enum Coefficients {
    Prime(u32),
    Tables(Arc<FieldTables>),
}

impl Coefficients {
    /// Number of distinct coefficient values.
    pub(crate) fn order(&self) -> u32 {
        match self {
            Coefficients::Prime(p) => *p,
            Coefficients::Tables(t) => t.order() as u32,
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Coefficients::Prime(p) => ((a as u64 + b as u64) % *p as u64) as u32,
            Coefficients::Tables(t) => t.add(a, b),
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        match self {
            Coefficients::Prime(p) => (p - a) % p,
            Coefficients::Tables(t) => t.neg(a),
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            Coefficients::Prime(p) => (a as u64 * b as u64 % *p as u64) as u32,
            Coefficients::Tables(t) => t.mul(a, b),
        }
    }

    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        match self {
            Coefficients::Prime(p) => inv_mod(a, *p),
            Coefficients::Tables(t) => t.inv(a),
        }
    }

    #[inline]
    pub(crate) fn frobenius(&self, j: u32, a: u32) -> u32 {
        match self {
            Coefficients::Prime(_) => a,
            Coefficients::Tables(t) => t.frobenius(j, a),
        }
    }
}

/// A ring of the form `R[d1; s1, delta1]...[dn; sn, deltan]`, `n >= 2`, where every
/// variable has either an identity twist or a zero derivation.
#[derive(Debug, Clone)]
pub struct OreRing {
    kind: RingKind,
    n: usize,
    field: Arc<FieldSpec>,
    sigma: Vec<Automorphism>,
    pub(crate) coeffs: Coefficients,
}

impl PartialEq for OreRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.n == other.n
            && self.field == other.field
            && self.sigma == other.sigma
    }
}

impl Eq for OreRing {}

impl OreRing {
    /// Validates a list of per-variable quasi-derivations and builds the ring.
    pub fn from_quasi_derivations(
        base: BaseRing,
        actions: &[QuasiDerivation],
    ) -> Result<Arc<Self>> {
        let n = actions.len();
        if n < 2 {
            return Err(Error::InvalidRing(format!(
                "need at least two Ore variables, got {n}"
            )));
        }
        for (i, qd) in actions.iter().enumerate() {
            if !qd.sigma.is_identity() && qd.delta != Derivation::Zero {
                return Err(Error::InvalidRing(format!(
                    "variable d{} has both a nontrivial twist and a nonzero derivation",
                    i + 1
                )));
            }
        }
        match base {
            BaseRing::Field(field) => {
                if actions.iter().any(|qd| qd.delta != Derivation::Zero) {
                    return Err(Error::InvalidRing(
                        "a finite field carries no nonzero derivation".into(),
                    ));
                }
                let k = field.degree() as u32;
                if actions.iter().any(|qd| qd.sigma.power() >= k) {
                    return Err(Error::InvalidRing(format!(
                        "Frobenius powers must lie in [0, {k})"
                    )));
                }
                let tables = FieldTables::new(Arc::clone(&field))?;
                Ok(Arc::new(Self {
                    kind: RingKind::Skew,
                    n,
                    field,
                    sigma: actions.iter().map(|qd| qd.sigma).collect(),
                    coeffs: Coefficients::Tables(Arc::new(tables)),
                }))
            }
            BaseRing::Polynomial { p, n_vars } => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if n_vars != n {
                    return Err(Error::InvalidRing(format!(
                        "{n_vars} commutative variables but {n} Ore variables"
                    )));
                }
                for (i, qd) in actions.iter().enumerate() {
                    if !qd.sigma.is_identity() || qd.delta != Derivation::Partial(i + 1) {
                        return Err(Error::InvalidRing(format!(
                            "over F_p[x1..xn] only di = d/dxi with identity twist is supported (variable d{})",
                            i + 1
                        )));
                    }
                }
                Ok(Arc::new(Self {
                    kind: RingKind::Weyl,
                    n,
                    field: FieldSpec::prime(p)?,
                    sigma: vec![Automorphism::IDENTITY; n],
                    coeffs: Coefficients::Prime(p),
                }))
            }
        }
    }

    /// `F_q[d1; frob^j1]...[dn; frob^jn]`.
    pub fn skew(field: Arc<FieldSpec>, frobenius_powers: &[u32]) -> Result<Arc<Self>> {
        let k = field.degree() as u32;
        let actions: Vec<QuasiDerivation> = frobenius_powers
            .iter()
            .map(|&j| {
                if j >= k {
                    Err(Error::InvalidRing(format!(
                        "Frobenius power {j} out of range for k = {k}"
                    )))
                } else {
                    Ok(QuasiDerivation {
                        sigma: Automorphism::frobenius(j, k as usize),
                        delta: Derivation::Zero,
                    })
                }
            })
            .collect::<Result<_>>()?;
        Self::from_quasi_derivations(BaseRing::Field(field), &actions)
    }

    /// The `n`-th polynomial Weyl algebra over `F_p`.
    pub fn weyl(p: u32, n: usize) -> Result<Arc<Self>> {
        let actions: Vec<QuasiDerivation> = (1..=n)
            .map(|i| QuasiDerivation {
                sigma: Automorphism::IDENTITY,
                delta: Derivation::Partial(i),
            })
            .collect();
        Self::from_quasi_derivations(BaseRing::Polynomial { p, n_vars: n }, &actions)
    }

    /// `F_5(alpha) = F_5[x]/<x^3+3x+3>` with `d1` twisted by Frobenius^2 and `d2`
    /// by Frobenius^1.
    pub fn f125_skew2() -> Arc<Self> {
        let field = FieldSpec::new(5, vec![3, 3, 0, 1]).expect("x^3+3x+3 is irreducible over F_5");
        Self::skew(field, &[2, 1]).expect("valid skew ring")
    }

    /// The third Weyl algebra over `F_71`.
    pub fn weyl3_f71() -> Arc<Self> {
        Self::weyl(71, 3).expect("71 is prime")
    }

    /// Built-in rings by name: `f125-skew2`, `weyl3-f71`, and generally `weyl<n>-f<p>`.
    pub fn by_alias(name: &str) -> Result<Arc<Self>> {
        match name {
            "f125-skew2" => Ok(Self::f125_skew2()),
            "weyl3-f71" => Ok(Self::weyl3_f71()),
            _ => {
                let parsed = name
                    .strip_prefix("weyl")
                    .and_then(|rest| rest.split_once("-f"))
                    .and_then(|(n, p)| Some((n.parse::<usize>().ok()?, p.parse::<u32>().ok()?)));
                match parsed {
                    Some((n, p)) => Self::weyl(p, n),
                    None => Err(Error::InvalidRing(format!("unknown ring alias `{name}`"))),
                }
            }
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Number of Ore variables `n`.
    pub fn n_ore_vars(&self) -> usize {
        self.n
    }

    /// Length of a stored exponent vector: `n` for skew rings, `2n` (x-block,
    /// then d-block) for Weyl algebras.
    pub fn n_exponents(&self) -> usize {
        match self.kind {
            RingKind::Skew => self.n,
            RingKind::Weyl => 2 * self.n,
        }
    }

    /// `F_q` for skew rings, the prime field for Weyl algebras.
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.sigma
    }

    pub fn quasi_derivations(&self) -> Vec<QuasiDerivation> {
        (0..self.n)
            .map(|i| QuasiDerivation {
                sigma: self.sigma[i],
                delta: match self.kind {
                    RingKind::Skew => Derivation::Zero,
                    RingKind::Weyl => Derivation::Partial(i + 1),
                },
            })
            .collect()
    }

    /// Number of values a single stored coefficient can take.
    pub fn coefficient_order(&self) -> u32 {
        self.coeffs.order()
    }

    /// Frobenius exponent of `sigma^e = s1^e1 ... sn^en` (skew rings; 0 for Weyl).
    #[inline]
    pub(crate) fn twist_class(&self, exps: &[u32]) -> u32 {
        match self.kind {
            RingKind::Weyl => 0,
            RingKind::Skew => {
                let k = self.field.degree() as u64;
                let s: u64 = exps
                    .iter()
                    .zip(&self.sigma)
                    .map(|(&e, s)| e as u64 * s.power() as u64)
                    .sum();
                (s % k) as u32
            }
        }
    }

    /// Checks pointwise over `F_p` that the subring of constants is fixed by
    /// every twist and killed by every derivation.
    pub fn constants_are_invariant(&self) -> bool {
        let p = self.characteristic();
        match self.kind {
            RingKind::Skew => (0..p).all(|c| {
                let e = self.field.from_prime(c);
                self.sigma.iter().all(|s| s.apply(&e) == e)
            }),
            RingKind::Weyl => (0..p).all(|c| {
                let poly = CommPolynomial::constant(p, self.n, c).expect("prime p");
                (1..=self.n).all(|i| poly.partial(i).map(|d| d.is_zero()).unwrap_or(false))
            }),
        }
    }

    /// Printed coefficient: `[a0,..]` in skew rings, a residue in Weyl algebras.
    pub(crate) fn format_coeff(&self, c: u32) -> String {
        match &self.coeffs {
            Coefficients::Prime(_) => c.to_string(),
            Coefficients::Tables(t) => fmt_vec(t.digits(c)),
        }
    }

    pub(crate) fn variable_names(&self) -> Vec<String> {
        let ds = (1..=self.n).map(|i| format!("d{i}"));
        match self.kind {
            RingKind::Skew => ds.collect(),
            RingKind::Weyl => (1..=self.n).map(|i| format!("x{i}")).chain(ds).collect(),
        }
    }

    pub(crate) fn tables(&self) -> Option<&FieldTables> {
        match &self.coeffs {
            Coefficients::Tables(t) => Some(t),
            Coefficients::Prime(_) => None,
        }
    }
}

impl fmt::Display for OreRing {
    /// Header line: `ring skew p=.. k=.. m=[..] sigma=[..]` or `ring weyl p=.. n=..`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Skew => {
                let powers: Vec<u32> = self.sigma.iter().map(Automorphism::power).collect();
                write!(
                    f,
                    "ring skew p={} k={} m={} sigma={}",
                    self.characteristic(),
                    self.field.degree(),
                    fmt_vec(self.field.modulus()),
                    fmt_vec(&powers)
                )
            }
            RingKind::Weyl => write!(f, "ring weyl p={} n={}", self.characteristic(), self.n),
        }
    }
}

/// Parses the header line written by `Display`.
impl FromStr for OreRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        if words.next() != Some("ring") {
            return Err(Error::Parse(format!("expected a ring header, found `{s}`")));
        }
        let kind = words.next();
        let mut attrs = std::collections::BTreeMap::new();
        for word in words {
            let (k, v) = word
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed ring attribute `{word}`")))?;
            attrs.insert(k, v);
        }
        let get = |key: &str| {
            attrs
                .get(key)
                .copied()
                .ok_or_else(|| Error::Parse(format!("ring header lacks `{key}=`")))
        };
        let ring = match kind {
            Some("skew") => {
                let p = parse_u32(get("p")?)?;
                let field = FieldSpec::new(p, parse_vec(get("m")?)?)?;
                if let Some(k) = attrs.get("k") {
                    if parse_u32(k)? as usize != field.degree() {
                        return Err(Error::Parse("k disagrees with the modulus".into()));
                    }
                }
                Self::skew(field, &parse_vec(get("sigma")?)?)?
            }
            Some("weyl") => {
                let p = parse_u32(get("p")?)?;
                let n = parse_u32(get("n")?)? as usize;
                Self::weyl(p, n)?
            }
            _ => return Err(Error::Parse(format!("unknown ring kind in `{s}`"))),
        };
        Ok(Arc::unwrap_or_clone(ring))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases() {
        let r = OreRing::f125_skew2();
        assert_eq!(r.kind(), RingKind::Skew);
        assert_eq!(r.n_ore_vars(), 2);
        assert_eq!(r.field().order(), 125);
        assert_eq!(
            r.automorphisms(),
            &[Automorphism::frobenius(2, 3), Automorphism::frobenius(1, 3)]
        );
        let w = OreRing::weyl3_f71();
        assert_eq!(w.kind(), RingKind::Weyl);
        assert_eq!(w.n_exponents(), 6);
        assert_eq!(*OreRing::by_alias("weyl2-f101").unwrap(), *OreRing::weyl(101, 2).unwrap());
        assert!(OreRing::by_alias("nope").is_err());
    }

    #[test]
    fn invalid_descriptors() {
        let f = FieldSpec::new(5, vec![3, 3, 0, 1]).unwrap();
        assert!(matches!(OreRing::skew(Arc::clone(&f), &[1]), Err(Error::InvalidRing(_))));
        assert!(OreRing::weyl(71, 1).is_err());
        assert_eq!(OreRing::weyl(70, 2), Err(Error::NotPrime(70)));
        let mixed = QuasiDerivation {
            sigma: Automorphism::frobenius(1, 3),
            delta: Derivation::Partial(1),
        };
        let plain = QuasiDerivation {
            sigma: Automorphism::IDENTITY,
            delta: Derivation::Zero,
        };
        assert!(OreRing::from_quasi_derivations(BaseRing::Field(Arc::clone(&f)), &[mixed, plain]).is_err());
        let deriv = QuasiDerivation {
            sigma: Automorphism::IDENTITY,
            delta: Derivation::Partial(1),
        };
        assert!(OreRing::from_quasi_derivations(BaseRing::Field(f), &[deriv, plain]).is_err());
    }

    #[test]
    fn constants_are_invariant() {
        assert!(OreRing::f125_skew2().constants_are_invariant());
        assert!(OreRing::weyl3_f71().constants_are_invariant());
    }

    #[test]
    fn header_round_trip() {
        for r in [OreRing::f125_skew2(), OreRing::weyl3_f71()] {
            let text = r.to_string();
            assert_eq!(text.parse::<OreRing>().unwrap(), *r);
        }
        assert_eq!(
            OreRing::f125_skew2().to_string(),
            "ring skew p=5 k=3 m=[3,3,0,1] sigma=[2,1]"
        );
    }
}
