//! Finite abelian groups `ℤ_{p²} × ℤ_{q²} × ℤ_{r²}` and `ℤ_N`, the sets
//! `H₀`, `Γ₀`, `Λ₀`, exact Fourier zero tests through mask polynomials, and
//! the lift of `φ(H₀)` to a union of unit intervals in `ℝ`.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};

/// Default cap on `|G|·|Λ|` for exhaustive maximality scans.
pub const DEFAULT_EXHAUSTIVE_BOUND: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub moduli: Vec<u64>,
}

impl FiniteGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&n| n < 2) {
            return Err(Error::InvalidParameters("moduli must be at least 2".into()));
        }
        moduli
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidParameters("group order overflows u64".into()))?;
        Ok(FiniteGroup { moduli })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.moduli.len()])
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::DimensionMismatch {
                expected: self.moduli.len(),
                found: coords.len(),
            });
        }
        Ok(GroupElement::new(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.moduli.len() && g.coords.iter().zip(&self.moduli).all(|(c, n)| c < n)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement::new(
            x.coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((a, b), n)| (a + n - b) % n)
                .collect(),
        )
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let mut cur = Some(self.zero());
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let next = cur.as_mut().expect("present");
            let mut i = self.moduli.len();
            loop {
                if i == 0 {
                    cur = None;
                    break;
                }
                i -= 1;
                next.coords[i] += 1;
                if next.coords[i] < self.moduli[i] {
                    break;
                }
                next.coords[i] = 0;
            }
            Some(out)
        })
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Distinct odd primes `p < q < r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeParams {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

impl Default for CubeParams {
    fn default() -> Self {
        CubeParams { p: 3, q: 5, r: 7 }
    }
}

impl CubeParams {
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self> {
        for x in [p, q, r] {
            if x == 2 || !is_prime(x) {
                return Err(Error::InvalidParameters(format!("{} is not an odd prime", x)));
            }
        }
        if !(p < q && q < r) {
            return Err(Error::InvalidParameters(format!("need p < q < r, got {}, {}, {}", p, q, r)));
        }
        let params = CubeParams { p, q, r };
        params
            .squares()
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidParameters("p²q²r² overflows u64".into()))?;
        Ok(params)
    }

    fn squares(&self) -> [u64; 3] {
        [self.p * self.p, self.q * self.q, self.r * self.r]
    }

    fn primes(&self) -> [u64; 3] {
        [self.p, self.q, self.r]
    }

    /// `N = p²q²r²`.
    pub fn n(&self) -> u64 {
        self.squares().iter().product()
    }

    pub fn group(&self) -> FiniteGroup {
        FiniteGroup::new(self.squares().to_vec()).expect("validated")
    }

    /// Weights `(q²r², p²r², p²q²)` of the isomorphism onto `ℤ_N`.
    fn weights(&self) -> [u64; 3] {
        let [a, b, c] = self.squares();
        [b * c, a * c, a * b]
    }
}

/// `φ(a, b, c) = q²r²a + p²r²b + p²q²c mod N`.
pub fn phi(params: &CubeParams, g: &GroupElement) -> u64 {
    let n = u128::from(params.n());
    let s: u128 = params
        .weights()
        .iter()
        .zip(&g.coords)
        .map(|(&w, &c)| u128::from(w) * u128::from(c))
        .sum();
    (s % n) as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u64
}

/// Inverse of [`phi`] via the Chinese remainder theorem.
pub fn phi_inverse(params: &CubeParams, x: u64) -> GroupElement {
    GroupElement::new(
        params
            .squares()
            .iter()
            .zip(params.weights())
            .map(|(&m, w)| {
                let inv = mod_inverse(w % m, m);
                ((u128::from(x % m) * u128::from(inv)) % u128::from(m)) as u64
            })
            .collect(),
    )
}

/// `H₀ = {(a, b, c) : a < p, b < q, c < r}`.
pub fn discrete_cube(params: &CubeParams) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity((params.p * params.q * params.r) as usize);
    for a in 0..params.p {
        for b in 0..params.q {
            for c in 0..params.r {
                out.push(GroupElement::new(vec![a, b, c]));
            }
        }
    }
    out
}

/// Zero set of `1̂_{H₀}`: some coordinate is a nonzero multiple of its prime.
pub fn ft_zero_set_h0(params: &CubeParams, g: &GroupElement) -> bool {
    g.coords
        .iter()
        .zip(params.primes())
        .any(|(&c, p)| c != 0 && c % p == 0)
}

/// `Γ₀ = {(u, v, w) : p | u, q | v, r | w}`.
pub fn gamma0(params: &CubeParams) -> Vec<GroupElement> {
    let [p, q, r] = params.primes();
    let mut out = Vec::new();
    for u in 0..p {
        for v in 0..q {
            for w in 0..r {
                out.push(GroupElement::new(vec![u * p, v * q, w * r]));
            }
        }
    }
    out
}

/// The discrete analogue of the thin set: the origin and the three families
/// `(n, 1−k, 1)`, `(1, k, 1−m)`, `(1−n, 1, m)` with `n, k, m` nonzero
/// multiples of `p, q, r`.
pub fn lambda0(params: &CubeParams) -> Vec<GroupElement> {
    let g = params.group();
    let mults = |p: u64| (1..p).map(move |i| (i * p) as i64);
    let mut out = vec![g.zero()];
    for n in mults(params.p) {
        for k in mults(params.q) {
            out.push(g.element(&[n, 1 - k, 1]).expect("3 coords"));
        }
    }
    for k in mults(params.q) {
        for m in mults(params.r) {
            out.push(g.element(&[1, k, 1 - m]).expect("3 coords"));
        }
    }
    for n in mults(params.p) {
        for m in mults(params.r) {
            out.push(g.element(&[1 - n, 1, m]).expect("3 coords"));
        }
    }
    out
}

/// `Σ_{e ∈ E} x^e` over `ℤ_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskPolynomial {
    pub coeffs: Vec<i64>,
}

impl MaskPolynomial {
    pub fn indicator(n: u64, set: impl IntoIterator<Item = u64>) -> Self {
        let mut coeffs = vec![0; n as usize];
        for e in set {
            coeffs[(e % n) as usize] = 1;
        }
        MaskPolynomial { coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// `|Σ_e c_e e^{−2πi e k / N}|` in floating point.
    pub fn dft_abs(&self, k: u64) -> f64 {
        let n = self.modulus();
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let phase = ((e as u128 * u128::from(k)) % u128::from(n)) as f64 / n as f64;
                acc += Complex64::from_polar(c as f64, -TAU * phase);
            }
        }
        acc.norm()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            sign = -sign;
        }
        f += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Φ_d = Π_{e | d} (x^e − 1)^{μ(d/e)}`, dense coefficients from degree 0.
pub fn cyclotomic(d: u64) -> Vec<i128> {
    let divs = divisors(d);
    let mut poly = vec![1i128];
    for &e in &divs {
        if mobius(d / e) == 1 {
            let e = e as usize;
            let mut next = vec![0i128; poly.len() + e];
            for (i, &c) in poly.iter().enumerate() {
                next[i + e] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &e in &divs {
        if mobius(d / e) == -1 {
            // P = Q·(x^e − 1) gives Q[n − e] = P[n] + Q[n]
            let e = e as usize;
            let deg = poly.len() - 1;
            let mut q = vec![0i128; deg + 1 - e];
            for n in (e..=deg).rev() {
                let above = if n <= deg - e { q[n] } else { 0 };
                q[n - e] = poly[n] + above;
            }
            poly = q;
        }
    }
    poly
}

/// Exact vanishing test for `P(ω^k)` with `ω = e^{2πi/N}`, cached by the
/// order `d = N / gcd(N, k)` of `ω^k`: `P(ω^k) = 0` iff `Φ_d` divides
/// `P mod (x^d − 1)`.
#[derive(Clone, Debug)]
pub struct MaskOracle {
    poly: MaskPolynomial,
    by_order: HashMap<u64, bool>,
}

impl MaskOracle {
    pub fn new(poly: MaskPolynomial) -> Self {
        MaskOracle {
            poly,
            by_order: HashMap::new(),
        }
    }

    pub fn polynomial(&self) -> &MaskPolynomial {
        &self.poly
    }

    pub fn vanishes(&mut self, k: u64) -> bool {
        let n = self.poly.modulus();
        let d = n / n.gcd(&(k % n));
        if let Some(&v) = self.by_order.get(&d) {
            return v;
        }
        let v = divisible_by_cyclotomic(&self.poly.coeffs, d);
        self.by_order.insert(d, v);
        v
    }
}

fn divisible_by_cyclotomic(coeffs: &[i64], d: u64) -> bool {
    let d = d as usize;
    let mut rem = vec![0i128; d];
    for (i, &c) in coeffs.iter().enumerate() {
        rem[i % d] += i128::from(c);
    }
    let phi = cyclotomic(d as u64);
    let m = phi.len() - 1;
    let terms: Vec<(usize, i128)> = phi.iter().enumerate().filter(|(_, c)| **c != 0).map(|(j, &c)| (j, c)).collect();
    for i in (m..d).rev() {
        let c = rem[i];
        if c != 0 {
            for &(j, pj) in &terms {
                rem[i - m + j] -= c * pj;
            }
        }
    }
    rem[..m].iter().all(|&c| c == 0)
}

/// One-shot form of [`MaskOracle::vanishes`].
pub fn mask_vanishes(poly: &MaskPolynomial, k: u64) -> bool {
    MaskOracle::new(poly.clone()).vanishes(k)
}

/// Every pairwise difference of distinct elements must lie in the zero set.
pub fn orthogonal_in_group(
    group: &FiniteGroup,
    set: &[GroupElement],
    zero: &mut dyn FnMut(&GroupElement) -> bool,
) -> Certificate {
    for (i, x) in set.iter().enumerate() {
        for y in &set[i + 1..] {
            if !zero(&group.sub(x, y)) {
                return Certificate::fail(
                    "orthogonal",
                    Witness::Residues {
                        values: x.coords.iter().chain(&y.coords).copied().collect(),
                    },
                );
            }
        }
    }
    Certificate::pass("orthogonal").with_detail("size", set.len())
}

/// Scans the whole group for an element `s ∉ Λ` with `s − λ` in the zero set
/// for every `λ ∈ Λ`.
pub fn exhaustive_maximality(
    group: &FiniteGroup,
    lambda: &[GroupElement],
    zero: &mut dyn FnMut(&GroupElement) -> bool,
    bound: u128,
) -> Result<Certificate> {
    let needed = u128::from(group.order()) * (lambda.len().max(1) as u128);
    if needed > bound {
        return Err(Error::BoundExceeded { needed, limit: bound });
    }
    let members: BTreeSet<&GroupElement> = lambda.iter().collect();
    let mut tests: u64 = 0;
    for s in group.elements() {
        if members.contains(&s) {
            continue;
        }
        let extends = lambda.iter().all(|l| {
            tests += 1;
            zero(&group.sub(&s, l))
        });
        if extends {
            return Ok(Certificate::fail("exhaustive_maximality", Witness::GroupElement { coords: s.coords })
                .with_detail("tests", tests));
        }
    }
    Ok(Certificate::pass("exhaustive_maximality")
        .with_detail("group_order", group.order())
        .with_detail("size", lambda.len())
        .with_detail("tests", tests))
}

/// `E ⊕ T = G`: every element has exactly one representation `e + t`.
pub fn tiling_check(group: &FiniteGroup, e: &[GroupElement], t: &[GroupElement]) -> bool {
    if (e.len() as u128) * (t.len() as u128) != u128::from(group.order()) {
        return false;
    }
    let mut seen = BTreeSet::new();
    e.iter().all(|x| t.iter().all(|y| seen.insert(group.add(x, y))))
}

/// A spectrum of `H` in a finite group: orthogonal with `|Γ| = |H|`.
pub fn spectrum_check(
    group: &FiniteGroup,
    gamma: &[GroupElement],
    h_size: usize,
    zero: &mut dyn FnMut(&GroupElement) -> bool,
) -> Certificate {
    let orth = orthogonal_in_group(group, gamma, zero);
    if !orth.is_pass() {
        return Certificate { check: "spectrum".into(), ..orth };
    }
    let verdict = if gamma.len() == h_size { Verdict::Pass } else { Verdict::Fail };
    Certificate::new("spectrum", verdict)
        .with_detail("size", gamma.len())
        .with_detail("target", h_size)
}

/// `∪_h [h, h+1)` for integer starts in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalUnion {
    pub modulus: u64,
    pub starts: Vec<u64>,
}

impl IntervalUnion {
    pub fn new(modulus: u64, mut starts: Vec<u64>) -> Result<Self> {
        starts.sort_unstable();
        starts.dedup();
        if starts.last().is_some_and(|&h| h >= modulus) {
            return Err(Error::InvalidParameters("interval start outside [0, N)".into()));
        }
        Ok(IntervalUnion { modulus, starts })
    }

    pub fn measure(&self) -> usize {
        self.starts.len()
    }

    /// `(h, h + 1)` endpoint pairs.
    pub fn intervals(&self) -> Vec<(u64, u64)> {
        self.starts.iter().map(|&h| (h, h + 1)).collect()
    }

    pub fn mask(&self) -> MaskPolynomial {
        MaskPolynomial::indicator(self.modulus, self.starts.iter().copied())
    }
}

/// `{x/N + ℤ : x ∈ residues}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSet {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl CosetSet {
    pub fn contains(&self, x: &BigRational) -> bool {
        let scaled = x * BigRational::from_integer(self.modulus.into());
        if !scaled.is_integer() {
            return false;
        }
        let k = scaled.to_integer().mod_floor(&self.modulus.into());
        k.to_u64().is_some_and(|k| self.residues.binary_search(&k).is_ok())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedSets {
    pub h: IntervalUnion,
    pub lambda: CosetSet,
    pub gamma: CosetSet,
}

fn phi_image(params: &CubeParams, set: &[GroupElement]) -> Vec<u64> {
    let mut v: Vec<u64> = set.iter().map(|g| phi(params, g)).collect();
    v.sort_unstable();
    v
}

/// `H = ∪_{h ∈ φ(H₀)} [h, h+1)` with `Λ = Λ₀′/N + ℤ`, `Γ = Γ₀′/N + ℤ`.
pub fn lift_to_r(params: &CubeParams) -> LiftedSets {
    let n = params.n();
    LiftedSets {
        h: IntervalUnion::new(n, phi_image(params, &discrete_cube(params))).expect("residues below N"),
        lambda: CosetSet {
            modulus: n,
            residues: phi_image(params, &lambda0(params)),
        },
        gamma: CosetSet {
            modulus: n,
            residues: phi_image(params, &gamma0(params)),
        },
    }
}

/// A disc `|z − center| ≤ radius` in `ℂ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexEnclosure {
    pub center: Complex64,
    pub radius: f64,
}

impl ComplexEnclosure {
    pub fn exact(z: Complex64) -> Self {
        ComplexEnclosure { center: z, radius: 0.0 }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.radius == 0.0 && self.center == Complex64::new(0.0, 0.0)
    }

    pub fn excludes_zero(&self) -> bool {
        self.center.norm() > self.radius
    }
}

/// Per-term bound on the error of `e^{−2πi t}` computed from an exactly
/// reduced phase `t ∈ [0, 1)`.
const TERM_ERROR: f64 = 1e-14;

/// Enclosure of `1̂_H(ξ) = (Σ_h e^{−2πi h ξ}) · 1̂_{[0,1)}(ξ)`.
///
/// Integer `ξ` is decided exactly by the interval factor, and `ξ ∈ (1/N)ℤ`
/// exactly through the mask polynomial when it vanishes there.
pub fn ft_interval_union(h: &IntervalUnion, xi: &BigRational) -> Result<ComplexEnclosure> {
    let (num, den) = match (xi.numer().to_i128(), xi.denom().to_i128()) {
        (Some(a), Some(b)) if b <= i128::from(u64::MAX) && a.unsigned_abs() <= u128::from(u64::MAX) => (a, b),
        _ => return Err(Error::InvalidParameters(format!("frequency {} too large", xi))),
    };
    if den == 1 {
        let z = if num == 0 { h.measure() as f64 } else { 0.0 };
        return Ok(ComplexEnclosure::exact(Complex64::new(z, 0.0)));
    }
    let n = i128::from(h.modulus);
    if n % den == 0 {
        let k = (num * (n / den)).rem_euclid(n) as u64;
        if mask_vanishes(&h.mask(), k) {
            return Ok(ComplexEnclosure::exact(Complex64::new(0.0, 0.0)));
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for &s in &h.starts {
        let t = (i128::from(s) * num).rem_euclid(den) as f64 / den as f64;
        sum += Complex64::from_polar(1.0, -TAU * t);
    }
    let sum_err = TERM_ERROR * (h.starts.len() as f64 + 1.0);
    let x = num as f64 / den as f64;
    let frac = num.rem_euclid(den) as f64 / den as f64;
    let sinc = (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -TAU * frac)) / Complex64::new(0.0, TAU * x);
    let sinc_err = 1e-14 * (1.0 + sinc.norm());
    let radius = sum.norm() * sinc_err + sinc.norm() * sum_err + sum_err * sinc_err;
    Ok(ComplexEnclosure {
        center: sum * sinc,
        radius,
    })
}

fn geometric_sum(count: u64, ratio_turns: f64) -> Complex64 {
    (0..count)
        .map(|a| Complex64::from_polar(1.0, -TAU * (a as f64 * ratio_turns).fract()))
        .sum()
}

/// Below this modulus the quotient `(1 − e^{−2πiξ/p})/(1 − e^{−2πiξ/p²})`
/// loses too much precision and the finite geometric sum is used instead.
const SMALL_DENOMINATOR: f64 = 1e-6;

/// `1̂_{φ(H₀)}(ξ/N)` as the product of three geometric-series quotients.
pub fn closed_form_ft(params: &CubeParams, xi: f64) -> Result<Complex64> {
    if !xi.is_finite() || xi.fract() == 0.0 {
        return Err(Error::DomainError(format!("closed form needs a non-integer frequency, got {}", xi)));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut out = one;
    for p in params.primes() {
        let pf = p as f64;
        let den = one - Complex64::from_polar(1.0, -TAU * (xi / (pf * pf)).fract());
        let factor = if den.norm() < SMALL_DENOMINATOR {
            geometric_sum(p, xi / (pf * pf))
        } else {
            (one - Complex64::from_polar(1.0, -TAU * (xi / pf).fract())) / den
        };
        out *= factor;
    }
    Ok(out)
}

/// `Σ_{a<p, b<q, c<r} e^{−2πi φ(a,b,c) ξ / N}` term by term, with `φ` read
/// as an integer in `[0, N)`.
pub fn direct_sum_ft(params: &CubeParams, xi: f64) -> Complex64 {
    let n = params.n() as f64;
    let w = params.weights();
    let mut acc = Complex64::new(0.0, 0.0);
    for a in 0..params.p {
        for b in 0..params.q {
            for c in 0..params.r {
                let e = (w[0] * a + w[1] * b + w[2] * c) as f64;
                acc += Complex64::from_polar(1.0, -TAU * (e * xi / n).fract());
            }
        }
    }
    acc
}

/// Checks that the integer representatives of `φ(H₀)` stay below `N`:
/// `q²r²(p−1) + p²r²(q−1) + p²q²(r−1) < N`.
pub fn no_overflow_check(params: &CubeParams) -> bool {
    let w = params.weights();
    let max: u128 = w
        .iter()
        .zip(params.primes())
        .map(|(&wi, p)| u128::from(wi) * u128::from(p - 1))
        .sum();
    max < u128::from(params.n())
}

/// Maximality of `Λ = Λ₀′/N + ℤ` for `H` in `ℝ`: (a) `Λ₀′` is maximal in
/// `ℤ_N` under the exact mask zero test, and (b) `1̂_H(x) ≠ 0` for every
/// sample `x = j/D ∈ (0, 1)` off `(1/N)ℤ`, `D` from `denominators`.
pub fn lifted_maximality(params: &CubeParams, denominators: &[u64]) -> Result<Certificate> {
    if !no_overflow_check(params) {
        return Err(Error::Inconsistent("representatives of phi(H0) exceed N".into()));
    }
    let n = params.n();
    let lifted = lift_to_r(params);
    let mut oracle = MaskOracle::new(lifted.h.mask());
    let zn = FiniteGroup::cyclic(n)?;
    let lambda: Vec<GroupElement> = lifted.lambda.residues.iter().map(|&k| GroupElement::new(vec![k])).collect();
    let part_a = exhaustive_maximality(
        &zn,
        &lambda,
        &mut |g: &GroupElement| oracle.vanishes(g.coords[0]),
        DEFAULT_EXHAUSTIVE_BOUND,
    )?;

    let mut samples: u64 = 0;
    let mut min_margin = f64::INFINITY;
    let mut part_b = Certificate::pass("few_zeros");
    'outer: for &d in denominators {
        if d == 0 {
            return Err(Error::InvalidParameters("denominator 0".into()));
        }
        for j in 1..d {
            if (u128::from(j) * u128::from(n)) % u128::from(d) == 0 {
                continue;
            }
            samples += 1;
            let x = BigRational::new(j.into(), d.into());
            let enc = ft_interval_union(&lifted.h, &x)?;
            min_margin = min_margin.min(enc.center.norm() - enc.radius);
            if !enc.excludes_zero() {
                let verdict = if enc.is_exact_zero() { Verdict::Fail } else { Verdict::Undecidable };
                part_b = Certificate::new("few_zeros", verdict).with_witness(Witness::Value { value: x.to_string() });
                break 'outer;
            }
        }
    }
    let part_b = part_b.with_detail("samples", samples).with_detail("min_margin", min_margin);
    Ok(Certificate::conjunction("lifted_maximality", vec![part_a, part_b])
        .with_detail("n", n)
        .with_detail("denominators", denominators.to_vec()))
}

/// The standard certificate for `(p, q, r)`: sizes, spectrum, orthogonality
/// and exhaustive maximality of `Λ₀`.
pub fn finite_certificate(params: &CubeParams) -> Result<Certificate> {
    let g = params.group();
    let h0 = discrete_cube(params);
    let g0 = gamma0(params);
    let l0 = lambda0(params);
    let mut zero = |x: &GroupElement| ft_zero_set_h0(params, x);
    let spectrum = spectrum_check(&g, &g0, h0.len(), &mut zero);
    let orth = orthogonal_in_group(&g, &l0, &mut zero);
    let maximal = exhaustive_maximality(&g, &l0, &mut zero, DEFAULT_EXHAUSTIVE_BOUND)?;
    let (p, q, r) = (params.p, params.q, params.r);
    let chain = (l0.len() as u64) < p * q + q * r + r * p && p * q + q * r + r * p < 3 * q * r && 3 * q * r <= p * q * r;
    let chain_cert = Certificate::new("size_chain", if chain { Verdict::Pass } else { Verdict::Fail });
    Ok(Certificate::conjunction("finite_group", vec![spectrum, orth, maximal, chain_cert])
        .with_detail("n", params.n())
        .with_detail("h0", h0.len())
        .with_detail("gamma0", g0.len())
        .with_detail("lambda0", l0.len())
        .with_detail("pq_qr_rp", p * q + q * r + r * p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn p357() -> CubeParams {
        CubeParams::default()
    }

    #[test]
    fn phi_values() {
        let p = p357();
        assert_eq!(p.n(), 11025);
        assert_eq!(phi(&p, &GroupElement::new(vec![1, 0, 0])), 1225);
        assert_eq!(phi(&p, &GroupElement::new(vec![0, 0, 0])), 0);
    }

    #[test]
    fn phi_is_an_isomorphism() {
        let p = p357();
        let g = p.group();
        let mut seen = vec![false; p.n() as usize];
        for x in g.elements() {
            let k = phi(&p, &x);
            assert!(!seen[k as usize]);
            seen[k as usize] = true;
            assert_eq!(phi_inverse(&p, k), x);
        }
        let a = GroupElement::new(vec![4, 17, 30]);
        let b = GroupElement::new(vec![8, 20, 48]);
        assert_eq!(phi(&p, &g.add(&a, &b)), (phi(&p, &a) + phi(&p, &b)) % p.n());
    }

    #[test]
    fn parameter_validation() {
        assert!(CubeParams::new(3, 5, 7).is_ok());
        assert!(CubeParams::new(2, 5, 7).is_err());
        assert!(CubeParams::new(5, 3, 7).is_err());
        assert!(CubeParams::new(3, 9, 11).is_err());
        assert!(CubeParams::new(3, 3, 7).is_err());
    }

    #[test]
    fn set_sizes() {
        let p = p357();
        let h0 = discrete_cube(&p);
        assert_eq!(h0.len(), 105);
        assert!(!h0.contains(&GroupElement::new(vec![3, 0, 0])));
        assert_eq!(gamma0(&p).len(), 105);
        let l0 = lambda0(&p);
        assert_eq!(l0.len(), 45);
        assert_eq!(l0.iter().collect::<BTreeSet<_>>().len(), 45);
    }

    #[test]
    fn zero_set_examples() {
        let p = p357();
        assert!(ft_zero_set_h0(&p, &GroupElement::new(vec![3, 0, 0])));
        assert!(!ft_zero_set_h0(&p, &GroupElement::new(vec![0, 0, 0])));
        assert!(ft_zero_set_h0(&p, &GroupElement::new(vec![1, 5, 0])));
        assert!(!ft_zero_set_h0(&p, &GroupElement::new(vec![1, 1, 1])));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(9), vec![1, 0, 0, 1, 0, 0, 1]);
        let c105 = cyclotomic(105);
        assert_eq!(c105.len(), 49);
        assert_eq!(c105[7], -2);
    }

    #[test]
    fn mask_examples() {
        let p = p357();
        let mask = lift_to_r(&p).h.mask();
        assert!(!mask_vanishes(&mask, 0));
        assert!(mask_vanishes(&mask, phi(&p, &GroupElement::new(vec![3, 0, 0]))));
        let small = MaskPolynomial::indicator(4, [0, 2]);
        assert!(mask_vanishes(&small, 1));
        assert!(!mask_vanishes(&small, 2));
    }

    #[test]
    fn finite_certificate_passes() {
        let cert = finite_certificate(&p357()).unwrap();
        assert_eq!(cert.verdict, Verdict::Pass, "{:?}", cert);
    }

    #[test]
    fn removing_origin_breaks_maximality() {
        let p = p357();
        let g = p.group();
        let l: Vec<GroupElement> = lambda0(&p).into_iter().skip(1).collect();
        let cert = exhaustive_maximality(&g, &l, &mut |x| ft_zero_set_h0(&p, x), DEFAULT_EXHAUSTIVE_BOUND).unwrap();
        assert_eq!(cert.witness, Some(Witness::GroupElement { coords: vec![0, 0, 0] }));
        let err = exhaustive_maximality(&g, &l, &mut |x| ft_zero_set_h0(&p, x), 1000).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
    }

    #[test]
    fn tilings() {
        let p = p357();
        let g = p.group();
        let h0 = discrete_cube(&p);
        assert!(tiling_check(&g, &h0, &gamma0(&p)));
        assert!(!tiling_check(&g, &h0, &[g.zero()]));
        let all: Vec<GroupElement> = g.elements().collect();
        assert!(tiling_check(&g, &all, &[g.zero()]));
    }

    #[test]
    fn interval_union_transform() {
        let h = lift_to_r(&p357()).h;
        assert_eq!(h.measure(), 105);
        let at0 = ft_interval_union(&h, &BigRational::zero()).unwrap();
        assert_eq!(at0.center.re, 105.0);
        assert!(ft_interval_union(&h, &BigRational::from_integer(1.into())).unwrap().is_exact_zero());
        let k = phi(&p357(), &GroupElement::new(vec![3, 0, 0]));
        let x = BigRational::new(k.into(), 11025.into());
        assert!(ft_interval_union(&h, &x).unwrap().is_exact_zero());
        let x = BigRational::new(1.into(), 22050.into());
        assert!(ft_interval_union(&h, &x).unwrap().excludes_zero());
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        let p = p357();
        for xi in [0.5, 0.3, 17.25, 9.0 * 3.5, 1234.567] {
            let a = closed_form_ft(&p, xi).unwrap();
            let b = direct_sum_ft(&p, xi);
            assert!((a - b).norm() < 1e-9, "{} {} {}", xi, a, b);
        }
        assert!(closed_form_ft(&p, 3.0).is_err());
    }

    #[test]
    fn overflow_bound() {
        assert!(no_overflow_check(&p357()));
        assert!(no_overflow_check(&CubeParams::new(5, 7, 11).unwrap()));
        let w = p357().weights();
        assert_eq!(w[0] * 2 + w[1] * 4 + w[2] * 6, 5564);
    }

    #[test]
    fn coset_membership() {
        let l = lift_to_r(&p357()).lambda;
        assert!(l.contains(&BigRational::zero()));
        assert!(l.contains(&BigRational::from_integer((-3).into())));
        assert!(!l.contains(&BigRational::new(1.into(), 2.into())));
    }
}
