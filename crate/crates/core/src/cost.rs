//! Step-count model for the key exchange over `F_q[d1; s1][d2; s2]` with
//! dense polynomials, where multiplying two polynomials of total degree `d`
//! is taken to cost `d^4 / 8` steps.
//!
//! The formulas are the printed closed forms that generated the published
//! cost table. In particular [`cost_powers`] uses the printed expression for
//! the power sum, which is far larger than the literal sum evaluated by
//! [`cost_powers_recursive`]; both are kept so the difference stays visible.

/// Default exponent of matrix multiplication.
pub const OMEGA: f64 = 2.373;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecurityTuple {
    /// Total degree of `L`.
    pub d_l: u32,
    /// Total degree of `P` and `Q`.
    pub d_pq: u32,
    /// Degree of the private polynomials over `F_p`.
    pub nu: u32,
    pub p: u32,
    pub omega: f64,
}

impl SecurityTuple {
    /// `p = 2`, `omega = 2.373`.
    pub fn new(d_l: u32, d_pq: u32, nu: u32) -> Self {
        Self {
            d_l,
            d_pq,
            nu,
            p: 2,
            omega: OMEGA,
        }
    }

    /// Largest total degree of an exchanged message, `2 nu d_pq + d_l`.
    pub fn d_m(&self) -> f64 {
        2.0 * self.nu as f64 * self.d_pq as f64 + self.d_l as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub secret_param: f64,
    pub initial_message: f64,
    pub shared_secret: f64,
    pub key_size_kb: u64,
    /// Model estimate only; see [`cost_brute_force`].
    pub brute_force: f64,
}

pub fn report(t: &SecurityTuple) -> CostReport {
    CostReport {
        secret_param: cost_secret_param(t),
        initial_message: cost_initial_message(t),
        shared_secret: cost_shared_secret(t),
        key_size_kb: key_size_kb(t),
        brute_force: cost_brute_force(t),
    }
}

fn quartic_over_8(d: f64) -> f64 {
    d.powi(4) / 8.0
}

/// Cost of all powers `P^2..P^nu`, printed closed form:
/// `d_pq^4/8 * (5(nu+1)^5 - (nu+1)^4/2 + (nu+1)^3/3 - nu/30 - 1/30)`.
pub fn cost_powers(nu: u32, d_pq: u32) -> f64 {
    let m = nu as f64 + 1.0;
    let n = nu as f64;
    let bracket = 5.0 * m.powi(5) - m.powi(4) / 2.0 + m.powi(3) / 3.0 - n / 30.0 - 1.0 / 30.0;
    (d_pq as f64).powi(4) / 8.0 * bracket
}

/// The recursion `c(1) = 0`, `c(j+1) = (j d_pq)^4 / 8 + c(j)` evaluated literally.
pub fn cost_powers_recursive(nu: u32, d_pq: u32) -> f64 {
    (1..nu).map(|j| quartic_over_8(j as f64 * d_pq as f64)).sum()
}

/// Scaling and summing the powers for one party's two private elements.
fn addition_cost(t: &SecurityTuple) -> f64 {
    let m = t.nu as f64 + 1.0;
    let n = t.nu as f64;
    let d2 = (t.d_pq as f64).powi(2);
    let scaling = d2 / 2.0 * 3.0 * (m.powi(3) - m.powi(2) / 2.0 + n / 6.0 + 1.0 / 6.0);
    scaling + 2.0 * n * n * d2 / 4.0
}

pub fn cost_secret_param(t: &SecurityTuple) -> f64 {
    2.0 * cost_powers(t.nu, t.d_pq) + addition_cost(t)
}

/// `(d_pq nu)^4/8 + (d_pq nu + d_l/2)^4/8`
pub fn cost_initial_message(t: &SecurityTuple) -> f64 {
    let a = t.d_pq as f64 * t.nu as f64;
    quartic_over_8(a) + quartic_over_8(a + t.d_l as f64 / 2.0)
}

/// `(2 d_pq nu + d_l/2)^4/8 + (3 d_pq nu + d_l/2)^4/8`
pub fn cost_shared_secret(t: &SecurityTuple) -> f64 {
    let a = t.d_pq as f64 * t.nu as f64;
    let half = t.d_l as f64 / 2.0;
    quartic_over_8(2.0 * a + half) + quartic_over_8(3.0 * a + half)
}

/// `ceil(((d_l + 8 nu d_pq)/2)^2 * ceil(log2 p) / 1024)`
pub fn key_size_kb(t: &SecurityTuple) -> u64 {
    let side = (t.d_l as f64 + 8.0 * t.nu as f64 * t.d_pq as f64) / 2.0;
    let bits_per_coeff = (t.p as f64).log2().ceil().max(1.0);
    (side * side * bits_per_coeff / 1024.0).ceil() as u64
}

/// Model estimate of an exhaustive search over one private polynomial:
/// `(p - 1) p^nu` candidates (nonzero constant term), each checked with a
/// linear system costing `(d_m/2)^(2 omega)`, plus the powers and additions
/// needed to form the candidates.
pub fn cost_brute_force(t: &SecurityTuple) -> f64 {
    let p = t.p as f64;
    let candidates = (p - 1.0) * p.powi(t.nu as i32);
    let per_candidate = (t.d_m() / 2.0).powf(2.0 * t.omega);
    candidates * per_candidate + cost_powers(t.nu, t.d_pq) + addition_cost(t)
}

/// One published row: the tuple and its secret-parameter, initial-message,
/// shared-secret, key-size and brute-force columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub tuple: (u32, u32, u32),
    pub secret_param: f64,
    pub initial_message: f64,
    pub shared_secret: f64,
    pub key_size_kb: u64,
    pub brute_force: f64,
}

const fn row(
    tuple: (u32, u32, u32),
    secret_param: f64,
    initial_message: f64,
    shared_secret: f64,
    key_size_kb: u64,
    brute_force: f64,
) -> PublishedRow {
    PublishedRow {
        tuple,
        secret_param,
        initial_message,
        shared_secret,
        key_size_kb,
        brute_force,
    }
}

/// The published cost table (`p = 2`), values as printed to 7 significant digits.
pub const PUBLISHED_TABLE: [PublishedRow; 9] = [
    row((30, 5, 10), 1.247955e8, 3.012579e6, 1.145127e8, 46, 2.066009e16),
    row((30, 5, 15), 8.144450e8, 1.215633e7, 5.073701e8, 97, 9.616857e18),
    row((30, 5, 20), 3.176336e9, 3.436258e7, 1.497794e9, 169, 2.237607e21),
    row((30, 5, 25), 9.248193e9, 7.853758e7, 3.508245e9, 260, 3.467317e23),
    row((30, 5, 30), 2.229704e10, 1.559313e8, 7.074856e9, 370, 4.110897e25),
    row((50, 5, 35), 4.711215e10, 3.172363e8, 1.391021e10, 514, 5.144021e27),
    row((50, 5, 40), 9.029806e10, 5.203613e8, 2.315166e10, 665, 4.258507e29),
    row((50, 5, 45), 1.605675e11, 8.086426e8, 3.637583e10, 836, 3.176783e31),
    row((50, 5, 50), 2.690343e11, 1.203174e9, 5.458994e10, 1027, 2.179949e33),
];

/// Relative tolerance for comparing a computed value with a number printed
/// to 7 significant digits.
pub const TABLE_TOLERANCE: f64 = 5e-7;

pub fn matches_published(computed: f64, published: f64) -> bool {
    ((computed - published) / published).abs() <= TABLE_TOLERANCE
}
