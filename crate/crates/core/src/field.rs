//! Prime fields and their small extensions `F_p[x]/<m(x)>`.
//!
//! Elements of `F_{p^k}` are dense coefficient vectors over `F_p`, least
//! significant first. The only automorphisms exposed are powers of the
//! Frobenius map `a -> a^p`, which is the whole automorphism group.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which [`FieldTables`] are built.
pub const MAX_TABLE_ORDER: u32 = 1024;

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Fermat; p is prime.
    Some(pow_mod(a, p as u64 - 2, p))
}

pub(crate) fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

/// The field `F_p[x]/<modulus>`; `k = deg modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// Builds `F_p[x]/<modulus>` after checking that `p` is prime and the modulus
    /// is monic and irreducible. Irreducibility is decided by exhaustive search
    /// for roots and quadratic factors, which settles every degree up to 4.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Arc<Self>> {
        let spec = Self::validated(p, modulus)?;
        if spec.degree() > 4 {
            return Err(Error::InvalidModulus(format!(
                "cannot certify irreducibility for degree {}; use FieldSpec::assume_irreducible",
                spec.degree()
            )));
        }
        if !spec.modulus_is_irreducible() {
            return Err(Error::InvalidModulus(format!(
                "{} is reducible over F_{}",
                fmt_vec(&spec.modulus),
                p
            )));
        }
        Ok(Arc::new(spec))
    }

    /// Like [`FieldSpec::new`] but trusts the caller on irreducibility.
    pub fn assume_irreducible(p: u32, modulus: Vec<u32>) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::validated(p, modulus)?))
    }

    /// The prime field `F_p`, presented as `F_p[x]/<x>`.
    pub fn prime(p: u32) -> Result<Arc<Self>> {
        Self::new(p, vec![0, 1])
    }

    fn validated(p: u32, mut modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        while modulus.len() > 1 && modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficients must be reduced mod p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        Ok(Self { p, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree `k`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Field order `q = p^k`, if it fits in a `u64`.
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn eval_modulus(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }

    fn modulus_is_irreducible(&self) -> bool {
        let k = self.degree();
        if k == 1 {
            return true;
        }
        if (0..self.p).any(|x| self.eval_modulus(x) == 0) {
            return false;
        }
        if k <= 3 {
            return true;
        }
        // k = 4: a reducible quartic without roots splits into two quadratics.
        for b in 0..self.p {
            for c in 0..self.p {
                if poly_rem(&self.modulus, &[c, b, 1], self.p).iter().all(|&r| r == 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            spec: Arc::clone(self),
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_prime(1)
    }

    /// Embeds `c mod p` from the prime subfield.
    pub fn from_prime(self: &Arc<Self>, c: u32) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p;
        e
    }

    /// The class of `x`, i.e. the generator `alpha` (or `0` when `k = 1`,
    /// where `x` reduces to the constant root of the linear modulus).
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.element(&[0, 1])
    }

    /// Reduces an arbitrary coefficient vector modulo `(modulus, p)`.
    pub fn element(self: &Arc<Self>, coeffs: &[u32]) -> FieldElement {
        let reduced: Vec<u32> = coeffs.iter().map(|&c| c % self.p).collect();
        let mut rem = poly_rem(&reduced, &self.modulus, self.p);
        rem.resize(self.degree(), 0);
        FieldElement {
            spec: Arc::clone(self),
            coeffs: rem,
        }
    }

    /// Element whose base-`p` digits (least significant first) are its coefficients.
    pub fn from_index(self: &Arc<Self>, mut index: u64) -> FieldElement {
        let mut coeffs = vec![0; self.degree()];
        for c in coeffs.iter_mut() {
            *c = (index % self.p as u64) as u32;
            index /= self.p as u64;
        }
        FieldElement {
            spec: Arc::clone(self),
            coeffs,
        }
    }

    /// Every element, ordered by [`FieldElement::index`].
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    /// Parses an element written as `[a0,...,a(k-1)]`.
    pub fn parse_element(self: &Arc<Self>, s: &str) -> Result<FieldElement> {
        let coeffs = parse_vec(s)?;
        if coeffs.len() != self.degree() {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("coefficient out of range in {s}")));
        }
        Ok(FieldElement {
            spec: Arc::clone(self),
            coeffs,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "field p={} k={} m={}",
            self.p,
            self.degree(),
            fmt_vec(&self.modulus)
        )
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut k = None;
        let mut m = None;
        let mut words = s.split_whitespace();
        if words.next() != Some("field") {
            return Err(Error::Parse(format!("expected `field ...`, found `{s}`")));
        }
        for word in words {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("malformed field attribute `{word}`")))?;
            match key {
                "p" => p = Some(parse_u32(value)?),
                "k" => k = Some(parse_u32(value)? as usize),
                "m" => m = Some(parse_vec(value)?),
                _ => return Err(Error::Parse(format!("unknown field attribute `{key}`"))),
            }
        }
        let (p, m) = match (p, m) {
            (Some(p), Some(m)) => (p, m),
            _ => return Err(Error::Parse("field needs p= and m=".into())),
        };
        let spec = FieldSpec::new(p, m)?;
        if let Some(k) = k {
            if k != spec.degree() {
                return Err(Error::Parse(format!(
                    "k={k} disagrees with modulus degree {}",
                    spec.degree()
                )));
            }
        }
        Ok(Arc::unwrap_or_clone(spec))
    }
}

/// `a -> a^(p^power)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Automorphism {
    power: u32,
}

impl Automorphism {
    pub const IDENTITY: Automorphism = Automorphism { power: 0 };

    /// The `power`-th iterate of Frobenius on a degree-`k` extension.
    pub fn frobenius(power: u32, k: usize) -> Self {
        Self {
            power: power % k as u32,
        }
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        a.frobenius(self.power)
    }
}

/// An element of `F_p[x]/<m(x)>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Coefficients of `1, alpha, ..., alpha^(k-1)`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Base-`p` integer with the coefficients as digits.
    pub fn index(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.spec.p as u64 + c as u64)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        Ok(Self {
            spec: Arc::clone(&self.spec),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        let p = self.spec.p;
        Self {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product reduced modulo `(m(x), p)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.spec.p as u64;
        let k = self.spec.degree();
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut rem = poly_rem(&prod, &self.spec.modulus, self.spec.p);
        rem.resize(k, 0);
        Self {
            spec: Arc::clone(&self.spec),
            coeffs: rem,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.spec.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    /// `a^(q-2)`, the inverse of a nonzero element.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    /// `a^(p^j)` by `j` successive `p`-th powers.
    pub fn frobenius(&self, j: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..(j as usize % self.spec.degree()) {
            out = out.pow(self.spec.p as u64);
        }
        out
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_vec(&self.coeffs))
    }
}

/// Remainder of `a` by the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let k = m.len() - 1;
    let p64 = p as u64;
    for d in (k..r.len()).rev() {
        let c = r[d] % p64;
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            let idx = d - k + i;
            r[idx] = (r[idx] + (p64 - c) * mi as u64) % p64;
        }
    }
    r.truncate(k.min(r.len()));
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

pub(crate) fn fmt_vec(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub(crate) fn parse_u32(s: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an unsigned integer, found `{s}`")))
}

pub(crate) fn parse_vec(s: &str) -> Result<Vec<u32>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[..]`, found `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_u32).collect()
}

/// Lookup tables for a field of order at most [`MAX_TABLE_ORDER`], indexed by
/// [`FieldElement::index`]. These back the coefficient arithmetic of skew
/// polynomial rings.
#[derive(Debug, Clone)]
pub struct FieldTables {
    spec: Arc<FieldSpec>,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    /// `frob[j * q + a] = a^(p^j)`
    frob: Vec<u16>,
    /// Base-`p` digits of every element, `k` per element.
    digits: Vec<u32>,
    /// Matrix over `F_p` (row-major `k x k`) of `v -> c * frob^t(v)` for each
    /// `(t, c)`, stored at `(t * q + c) * k * k`.
    scaled_frob: Vec<u32>,
}

impl FieldTables {
    pub fn new(spec: Arc<FieldSpec>) -> Result<Self> {
        let order = spec.order();
        if order > MAX_TABLE_ORDER as u64 {
            return Err(Error::InvalidModulus(format!(
                "field order {order} exceeds the supported maximum {MAX_TABLE_ORDER}"
            )));
        }
        let q = order as usize;
        let k = spec.degree();
        let p = spec.p;
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = a.add(b).unwrap().index() as u16;
                mul[i * q + j] = a.mul_unchecked(b).index() as u16;
            }
        }
        let neg = elems.iter().map(|a| a.neg().index() as u16).collect();
        let inv = elems
            .iter()
            .map(|a| a.inv().map(|x| x.index() as u16).unwrap_or(0))
            .collect();
        let mut frob = vec![0u16; k * q];
        for j in 0..k {
            for (i, a) in elems.iter().enumerate() {
                frob[j * q + i] = a.frobenius(j as u32).index() as u16;
            }
        }
        let digits: Vec<u32> = elems.iter().flat_map(|a| a.coeffs.clone()).collect();
        // Column s of the matrix for (t, c) is the digit vector of c * frob^t(alpha^s).
        let basis: Vec<FieldElement> = (0..k)
            .map(|s| {
                let mut v = vec![0; k];
                v[s] = 1;
                spec.element(&v)
            })
            .collect();
        let mut scaled_frob = vec![0u32; k * q * k * k];
        for t in 0..k {
            let images: Vec<FieldElement> =
                basis.iter().map(|b| b.frobenius(t as u32)).collect();
            for (c, ce) in elems.iter().enumerate() {
                let base = (t * q + c) * k * k;
                for (s, img) in images.iter().enumerate() {
                    let col = ce.mul_unchecked(img);
                    for r in 0..k {
                        scaled_frob[base + r * k + s] = col.coeffs[r];
                    }
                }
            }
        }
        debug_assert!(p >= 2);
        Ok(Self {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            frob,
            digits,
            scaled_frob,
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.spec.degree()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero index; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize] as u32)
    }

    #[inline]
    pub fn frobenius(&self, j: u32, a: u32) -> u32 {
        self.frob[(j as usize % self.degree()) * self.q + a as usize] as u32
    }

    #[inline]
    pub fn digits(&self, a: u32) -> &[u32] {
        let k = self.degree();
        &self.digits[a as usize * k..(a as usize + 1) * k]
    }

    /// Row-major matrix of `v -> c * frob^t(v)` acting on digit vectors.
    #[inline]
    pub fn scaled_frobenius(&self, t: u32, c: u32) -> &[u32] {
        let k = self.degree();
        let base = (t as usize * self.q + c as usize) * k * k;
        &self.scaled_frob[base..base + k * k]
    }

    pub fn index_of_digits(&self, digits: &[u32]) -> u32 {
        let p = self.spec.p;
        digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
    }
}
