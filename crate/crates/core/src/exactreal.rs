//! Exact arithmetic on numbers `q + Σ cᵢ·τᵢ`.
//!
//! `q` is an arbitrary-precision rational, the `cᵢ` are integers and the
//! `τᵢ` are formal symbols standing for fixed generic non-integer reals.
//! The set `{1, τ₁, τ₂, …}` is treated as linearly independent over the
//! rationals, so integrality and equality are decided structurally.
//! Magnitude questions go through a [`SymbolWitness`], which supplies
//! refinable rational enclosures for every symbol.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Name of a generic symbol such as `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymbolId(String);

impl SymbolId {
    pub fn new(name: impl Into<String>) -> Self {
        SymbolId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for SymbolId {
    fn from(s: &str) -> Self {
        SymbolId(s.to_owned())
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `rat + Σ syms[τ]·τ`, kept in canonical form: the fraction is reduced with a
/// positive denominator and no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicReal {
    rat: BigRational,
    syms: BTreeMap<SymbolId, i64>,
}

impl Default for SymbolicReal {
    fn default() -> Self {
        Self::zero()
    }
}

impl SymbolicReal {
    pub fn zero() -> Self {
        SymbolicReal {
            rat: BigRational::zero(),
            syms: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`. Panics if `denom == 0`.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn rational(rat: BigRational) -> Self {
        SymbolicReal {
            rat,
            syms: BTreeMap::new(),
        }
    }

    /// The bare symbol `τ`.
    pub fn symbol(id: impl Into<SymbolId>) -> Self {
        let mut syms = BTreeMap::new();
        syms.insert(id.into(), 1);
        SymbolicReal {
            rat: BigRational::zero(),
            syms,
        }
    }

    /// Builds a value from parts, dropping zero coefficients.
    pub fn from_parts(rat: BigRational, syms: impl IntoIterator<Item = (SymbolId, i64)>) -> Self {
        let mut out = SymbolicReal::rational(rat);
        for (id, c) in syms {
            out.add_symbol(id, c);
        }
        out
    }

    fn add_symbol(&mut self, id: SymbolId, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.syms.entry(id) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn symbol_coeffs(&self) -> &BTreeMap<SymbolId, i64> {
        &self.syms
    }

    pub fn is_rational(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn is_integer(&self) -> bool {
        self.syms.is_empty() && self.rat.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.syms.is_empty() && self.rat.is_zero()
    }

    pub fn is_nonzero_integer(&self) -> bool {
        self.is_integer() && !self.rat.is_zero()
    }

    /// The integer value, when this is an integer that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.rat.to_integer().to_i64()
        } else {
            None
        }
    }

    /// `self − other ∈ ℤ`, without building the difference's symbol map.
    pub fn differs_by_integer(&self, other: &SymbolicReal) -> bool {
        self.syms == other.syms && (&self.rat - &other.rat).is_integer()
    }

    /// `self − other ∈ ℤ∖{0}`.
    pub fn differs_by_nonzero_integer(&self, other: &SymbolicReal) -> bool {
        if self.syms != other.syms {
            return false;
        }
        let d = &self.rat - &other.rat;
        d.is_integer() && !d.is_zero()
    }

    pub fn plus_int(&self, n: i64) -> SymbolicReal {
        let mut out = self.clone();
        out.rat += BigRational::from_integer(BigInt::from(n));
        out
    }

    /// Integer multiple `n·self`.
    pub fn scale(&self, n: i64) -> SymbolicReal {
        if n == 0 {
            return SymbolicReal::zero();
        }
        SymbolicReal {
            rat: &self.rat * BigRational::from_integer(BigInt::from(n)),
            syms: self.syms.iter().map(|(k, c)| (k.clone(), c * n)).collect(),
        }
    }

    /// Largest integer `m` with `m ≤ rat`. Used to reduce offsets mod 1.
    pub fn rational_floor(&self) -> BigInt {
        self.rat.floor().to_integer()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &SymbolId> {
        self.syms.keys()
    }

    pub fn enclose(&self, witness: &SymbolWitness, bits: u32) -> Result<RationalInterval> {
        let mut acc = RationalInterval::point(self.rat.clone());
        for (id, &c) in &self.syms {
            let value = witness.get(id)?;
            acc = acc.add(&value.enclosure(bits).scale(c));
        }
        Ok(acc)
    }

    /// Floating approximation through the witness values. Not rigorous; meant
    /// for display and for picking search windows.
    pub fn approx_f64(&self, witness: &SymbolWitness) -> Result<f64> {
        let mut v = self.rat.to_f64().unwrap_or(f64::NAN);
        for (id, &c) in &self.syms {
            v += c as f64 * witness.get(id)?.to_f64();
        }
        Ok(v)
    }

    /// Decides the sign of `self − q` under the witness, refining until the
    /// enclosure separates from `q`.
    pub fn compare_rational(
        &self,
        q: &BigRational,
        witness: &SymbolWitness,
        cfg: RefineConfig,
    ) -> Result<Ordering> {
        if self.syms.is_empty() {
            return Ok(self.rat.cmp(q));
        }
        for depth in 0..cfg.max_depth {
            let iv = self.enclose(witness, cfg.start_bits + depth)?;
            if &iv.hi < q {
                return Ok(Ordering::Less);
            }
            if &iv.lo > q {
                return Ok(Ordering::Greater);
            }
        }
        Err(Error::Undecidable {
            depth: cfg.max_depth,
            what: format!("sign of ({}) - ({})", self, q),
        })
    }

    /// `|self| < 1` under the witness.
    pub fn compare_abs_lt_one(&self, witness: &SymbolWitness) -> Result<bool> {
        self.compare_abs_lt_one_with(witness, RefineConfig::default())
    }

    pub fn compare_abs_lt_one_with(&self, witness: &SymbolWitness, cfg: RefineConfig) -> Result<bool> {
        let one = BigRational::one();
        if self.compare_rational(&one, witness, cfg)? != Ordering::Less {
            return Ok(false);
        }
        Ok(self.compare_rational(&-one, witness, cfg)? == Ordering::Greater)
    }
}

impl From<i64> for SymbolicReal {
    fn from(n: i64) -> Self {
        SymbolicReal::from_int(n)
    }
}

impl<'a> Add<&'a SymbolicReal> for &'a SymbolicReal {
    type Output = SymbolicReal;
    fn add(self, rhs: &'a SymbolicReal) -> SymbolicReal {
        let mut out = self.clone();
        out.rat += &rhs.rat;
        for (id, &c) in &rhs.syms {
            out.add_symbol(id.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a SymbolicReal> for &'a SymbolicReal {
    type Output = SymbolicReal;
    fn sub(self, rhs: &'a SymbolicReal) -> SymbolicReal {
        let mut out = self.clone();
        out.rat -= &rhs.rat;
        for (id, &c) in &rhs.syms {
            out.add_symbol(id.clone(), -c);
        }
        out
    }
}

impl Add for SymbolicReal {
    type Output = SymbolicReal;
    fn add(self, rhs: SymbolicReal) -> SymbolicReal {
        &self + &rhs
    }
}

impl Sub for SymbolicReal {
    type Output = SymbolicReal;
    fn sub(self, rhs: SymbolicReal) -> SymbolicReal {
        &self - &rhs
    }
}

impl Neg for &SymbolicReal {
    type Output = SymbolicReal;
    fn neg(self) -> SymbolicReal {
        SymbolicReal {
            rat: -&self.rat,
            syms: self.syms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Neg for SymbolicReal {
    type Output = SymbolicReal;
    fn neg(self) -> SymbolicReal {
        -&self
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.rat.is_zero() || self.syms.is_empty() {
            write!(f, "{}", self.rat)?;
            wrote = true;
        }
        for (id, &c) in &self.syms {
            let mag = c.unsigned_abs();
            match (wrote, c < 0) {
                (false, false) => {}
                (false, true) => f.write_str("-")?,
                (true, false) => f.write_str(" + ")?,
                (true, true) => f.write_str(" - ")?,
            }
            if mag != 1 {
                write!(f, "{}*", mag)?;
            }
            write!(f, "{}", id)?;
            wrote = true;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SymbolicRealRepr {
    rat: String,
    syms: BTreeMap<SymbolId, i64>,
}

impl Serialize for SymbolicReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymbolicRealRepr {
            rat: self.rat.to_string(),
            syms: self.syms.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymbolicReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymbolicRealRepr::deserialize(deserializer)?;
        let rat = parse_rational(&repr.rat).map_err(serde::de::Error::custom)?;
        Ok(SymbolicReal::from_parts(rat, repr.syms))
    }
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|e| Error::Parse(format!("`{}`: {}", s, e)))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("`{}`: zero denominator", s)));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
    }
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn scale(&self, c: i64) -> RationalInterval {
        let c = BigRational::from_integer(BigInt::from(c));
        let a = &self.lo * &c;
        let b = &self.hi * &c;
        if a <= b {
            RationalInterval { lo: a, hi: b }
        } else {
            RationalInterval { lo: b, hi: a }
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_integer(&self) -> bool {
        self.lo.ceil() <= self.hi
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NEG_INFINITY),
            self.hi.to_f64().unwrap_or(f64::INFINITY),
        )
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        write!(f, "[{:.9}, {:.9}]", lo, hi)
    }
}

/// `√radicand / divisor` with a non-square radicand, so the value is
/// irrational and in particular never an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticSurd {
    radicand: u64,
    divisor: u64,
}

impl QuadraticSurd {
    pub fn new(radicand: u64, divisor: u64) -> Result<Self> {
        if divisor == 0 {
            return Err(Error::InvalidParameters("surd divisor must be positive".into()));
        }
        let r = radicand.sqrt();
        if r * r == radicand {
            return Err(Error::InvalidParameters(format!(
                "sqrt{} is rational; witness values must be irrational",
                radicand
            )));
        }
        Ok(QuadraticSurd { radicand, divisor })
    }

    pub fn to_f64(self) -> f64 {
        (self.radicand as f64).sqrt() / self.divisor as f64
    }

    /// Enclosure of width `1 / (divisor · 2^bits)`.
    pub fn enclosure(self, bits: u32) -> RationalInterval {
        let scaled = BigInt::from(self.radicand) << (2 * bits as usize);
        let root = scaled.sqrt();
        let denom = BigInt::from(self.divisor) << bits as usize;
        let lo = BigRational::new(root.clone(), denom.clone());
        let hi = BigRational::new(root + 1, denom);
        RationalInterval { lo, hi }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisor == 1 {
            write!(f, "sqrt{}", self.radicand)
        } else {
            write!(f, "sqrt{}/{}", self.radicand, self.divisor)
        }
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("witness `{}` is not of the form sqrtN or sqrtN/M", s));
        let rest = s.trim().strip_prefix("sqrt").ok_or_else(bad)?;
        let (n, d) = match rest.split_once('/') {
            Some((n, d)) => (n, d),
            None => (rest, "1"),
        };
        let n: u64 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        QuadraticSurd::new(n, d)
    }
}

impl Serialize for QuadraticSurd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticSurd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Concrete values for the generic symbols, used only for magnitude decisions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymbolWitness {
    values: BTreeMap<SymbolId, QuadraticSurd>,
}

pub const ALPHA: &str = "alpha";
pub const BETA: &str = "beta";
pub const GAMMA: &str = "gamma";

impl Default for SymbolWitness {
    /// α = √2/2, β = √3/3, γ = √5/5.
    fn default() -> Self {
        let mut values = BTreeMap::new();
        values.insert(SymbolId::from(ALPHA), QuadraticSurd { radicand: 2, divisor: 2 });
        values.insert(SymbolId::from(BETA), QuadraticSurd { radicand: 3, divisor: 3 });
        values.insert(SymbolId::from(GAMMA), QuadraticSurd { radicand: 5, divisor: 5 });
        SymbolWitness { values }
    }
}

impl SymbolWitness {
    pub fn empty() -> Self {
        SymbolWitness {
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, id: impl Into<SymbolId>, value: QuadraticSurd) -> Self {
        self.values.insert(id.into(), value);
        self
    }

    pub fn set(&mut self, id: impl Into<SymbolId>, value: QuadraticSurd) {
        self.values.insert(id.into(), value);
    }

    pub fn get(&self, id: &SymbolId) -> Result<QuadraticSurd> {
        self.values
            .get(id)
            .copied()
            .ok_or_else(|| Error::MissingWitness(id.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SymbolId, &QuadraticSurd)> {
        self.values.iter()
    }

    /// Enclosures of every declared symbol at `bits` bits of precision.
    pub fn enclosures(&self, bits: u32) -> EnclosureTable {
        EnclosureTable {
            table: self
                .values
                .iter()
                .map(|(id, v)| (id.clone(), v.enclosure(bits)))
                .collect(),
        }
    }

    pub fn covers<'a>(&self, mut ids: impl Iterator<Item = &'a SymbolId>) -> Result<()> {
        match ids.find(|id| !self.values.contains_key(*id)) {
            Some(id) => Err(Error::MissingWitness(id.clone())),
            None => Ok(()),
        }
    }
}

/// Fixed-precision enclosures for a batch of evaluations.
#[derive(Clone, Debug)]
pub struct EnclosureTable {
    table: BTreeMap<SymbolId, RationalInterval>,
}

impl EnclosureTable {
    pub fn enclose(&self, x: &SymbolicReal) -> Result<RationalInterval> {
        let mut acc = RationalInterval::point(x.rat.clone());
        for (id, &c) in &x.syms {
            let iv = self
                .table
                .get(id)
                .ok_or_else(|| Error::MissingWitness(id.clone()))?;
            acc = acc.add(&iv.scale(c));
        }
        Ok(acc)
    }
}

/// Precision schedule for witness comparisons: depth `i` uses enclosures of
/// `start_bits + i` bits, so each step halves the enclosure width.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefineConfig {
    pub start_bits: u32,
    pub max_depth: u32,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig {
            start_bits: 8,
            max_depth: 64,
        }
    }
}

/// Shorthand used throughout the crate and its tests: `sym("beta", -3)` is `β − 3`.
pub fn sym(name: &str, offset: i64) -> SymbolicReal {
    SymbolicReal::symbol(name).plus_int(offset)
}

pub fn int(n: i64) -> SymbolicReal {
    SymbolicReal::from_int(n)
}

pub fn ratio(n: i64, d: i64) -> SymbolicReal {
    SymbolicReal::from_ratio(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_cancellation() {
        assert_eq!(&sym(BETA, -3) - &sym(BETA, -5), int(2));
        let d = &SymbolicReal::symbol(ALPHA) - &SymbolicReal::symbol(BETA);
        assert_eq!(d.symbol_coeffs().get(&SymbolId::from(ALPHA)), Some(&1));
        assert_eq!(d.symbol_coeffs().get(&SymbolId::from(BETA)), Some(&-1));
        let a = &ratio(1, 2) + &SymbolicReal::symbol(GAMMA);
        let b = &ratio(1, 2) - &SymbolicReal::symbol(GAMMA);
        assert_eq!(&a + &b, int(1));
        assert!((&a + &b).symbol_coeffs().is_empty());
    }

    #[test]
    fn integrality() {
        assert!(int(5).is_integer());
        assert!(!sym(BETA, -3).is_integer());
        let x = &(&SymbolicReal::symbol(ALPHA) - &SymbolicReal::symbol(BETA)) + &int(1);
        assert!(!x.is_integer());
        // the default witnesses agree: α − β + 1 ≈ 1.1296
        let w = SymbolWitness::default();
        assert!(!x.enclose(&w, 40).unwrap().contains_integer());
        assert!(!ratio(3, 2).is_integer());
    }

    #[test]
    fn zero_and_nonzero_integer() {
        assert_eq!((int(0).is_nonzero_integer(), int(0).is_zero()), (false, true));
        let g = sym(GAMMA, -2);
        let z = &g - &g;
        assert_eq!((z.is_nonzero_integer(), z.is_zero()), (false, true));
        assert_eq!((int(-7).is_nonzero_integer(), int(-7).is_zero()), (true, false));
    }

    #[test]
    fn abs_lt_one() {
        let w = SymbolWitness::default();
        assert!(ratio(3, 4).compare_abs_lt_one(&w).unwrap());
        assert!(!int(2).compare_abs_lt_one(&w).unwrap());
        assert!(!int(1).compare_abs_lt_one(&w).unwrap());
        assert!(!int(-1).compare_abs_lt_one(&w).unwrap());
        let w2 = SymbolWitness::empty().with(ALPHA, "sqrt2".parse().unwrap());
        assert!(sym(ALPHA, -1).compare_abs_lt_one(&w2).unwrap());
        assert!(!sym(ALPHA, 1).compare_abs_lt_one(&w2).unwrap());
    }

    #[test]
    fn missing_witness_is_reported() {
        let w = SymbolWitness::empty();
        let err = sym("delta", 0).compare_abs_lt_one(&w).unwrap_err();
        assert_eq!(err, Error::MissingWitness(SymbolId::from("delta")));
    }

    #[test]
    fn refinement_depth_exhaustion() {
        let w = SymbolWitness::default();
        let cfg = RefineConfig {
            start_bits: 0,
            max_depth: 2,
        };
        // α ≈ 0.7071 needs more than two bits to separate from 0.7
        let err = sym(ALPHA, 0)
            .compare_rational(&BigRational::new(7.into(), 10.into()), &w, cfg)
            .unwrap_err();
        assert!(matches!(err, Error::Undecidable { depth: 2, .. }));
    }

    #[test]
    fn surd_enclosure_brackets_value() {
        let s: QuadraticSurd = "sqrt3/3".parse().unwrap();
        for bits in [1, 8, 30, 60] {
            let iv = s.enclosure(bits);
            let (lo, hi) = iv.to_f64_bounds();
            assert!(lo <= s.to_f64() && s.to_f64() <= hi);
            assert!(!iv.contains_integer() || bits < 2);
        }
        assert!("sqrt4".parse::<QuadraticSurd>().is_err());
        assert!("cbrt2".parse::<QuadraticSurd>().is_err());
        assert_eq!(s.to_string(), "sqrt3/3");
    }

    #[test]
    fn json_form_is_canonical() {
        let x = &(&sym(ALPHA, 0) - &SymbolicReal::symbol(BETA)) + &ratio(6, 4);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"rat":"3/2","syms":{"alpha":1,"beta":-1}}"#);
        let back: SymbolicReal = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        let z: SymbolicReal = serde_json::from_str(r#"{"rat":"-4/2","syms":{"gamma":0}}"#).unwrap();
        assert_eq!(z, int(-2));
        assert!(z.symbol_coeffs().is_empty());
        assert!(serde_json::from_str::<SymbolicReal>(r#"{"rat":"1/0","syms":{}}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(sym(BETA, -3).to_string(), "-3 + beta");
        assert_eq!((-SymbolicReal::symbol(GAMMA)).scale(2).to_string(), "-2*gamma");
        assert_eq!(int(0).to_string(), "0");
    }
}
