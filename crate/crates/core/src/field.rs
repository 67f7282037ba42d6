//! Exact field arithmetic: prime fields F_p and the rationals.
//!
//! Everything downstream is generic over [`Scalar`]. The two instances are
//! [`Fp`] (dynamic prime modulus, canonical residues) and [`Rat`] (arbitrary
//! precision rationals kept in reduced form). No floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus. Keeps `p^2 * rank` inside `u64` during
/// delayed-reduction elimination (rank < 2^12 at desk scale).
pub const MAX_PRIME: u64 = 1 << 26;

/// Which field a module lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rational => Ok(()),
            FieldSpec::Prime(p) => {
                if !is_prime(*p) {
                    return Err(Error::invalid(format!("{p} is not prime")));
                }
                if *p >= MAX_PRIME {
                    return Err(Error::invalid(format!(
                        "prime modulus {p} exceeds the supported bound {MAX_PRIME}"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// The accumulator hooks exist so row eliminations can defer modular
/// reduction on the prime-field path; the rational path is a passthrough.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Send + Sync {
    /// Accumulation cell used inside row operations.
    type Acc: Clone + Send;

    fn field_spec(&self) -> Option<FieldSpec>;

    /// Parse from the canonical decimal-string form under a field spec.
    fn parse(s: &str, spec: &FieldSpec) -> Result<Self>;

    /// Embed a small signed integer.
    fn from_int(v: i64, spec: &FieldSpec) -> Self;

    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn add_assign(&mut self, other: &Self);

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Canonical string form: residue for F_p, reduced fraction for Q.
    fn to_decimal(&self) -> String {
        format!("{self}")
    }

    fn acc_new(v: &Self) -> Self::Acc;
    /// `dst[i] += f * src[i]` pointwise; entries of `src` and `f` canonical.
    fn acc_axpy(dst: &mut [Self::Acc], f: &Self, src: &[Self]);
    /// How many axpy passes may run before `acc_flush` is required.
    fn acc_budget(&self) -> usize;
    fn acc_flush(a: &mut Self::Acc);
    fn acc_done(a: Self::Acc) -> Self;
}

// ---------------------------------------------------------------------------
// Prime field
// ---------------------------------------------------------------------------

/// Element of F_p with the modulus carried in the value.
///
/// A modulus of 0 marks the additive/multiplicative literals produced by
/// `zero()`/`one()` before they meet a bound element; the first arithmetic
/// operation adopts the partner's modulus. All stored residues are canonical
/// (`v < p` when bound).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        debug_assert!(p >= 2);
        let m = p as i64;
        let r = ((v % m) + m) % m;
        Fp { v: r as u64, p }
    }

    pub fn residue(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn unify(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, m) | (m, 0) => m,
            (m, n) => {
                assert_eq!(m, n, "mixed prime moduli {m} and {n}");
                m
            }
        }
    }

    fn reduce(v: u64, p: u64) -> u64 {
        if p == 0 {
            v
        } else {
            v % p
        }
    }

    fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl std::ops::Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = Fp::unify(self.p, rhs.p);
        Fp {
            v: Fp::reduce(self.v + rhs.v, p),
            p,
        }
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = Fp::unify(self.p, rhs.p);
        Fp {
            v: Fp::reduce(self.v * rhs.v, p),
            p,
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
}

impl Scalar for Fp {
    type Acc = Fp;

    fn field_spec(&self) -> Option<FieldSpec> {
        if self.p == 0 {
            None
        } else {
            Some(FieldSpec::Prime(self.p))
        }
    }

    fn parse(s: &str, spec: &FieldSpec) -> Result<Self> {
        let p = match spec {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rational => return Err(Error::invalid("prime-field element under Q spec")),
        };
        let v = i64::from_str(s.trim())
            .map_err(|_| Error::invalid(format!("bad field element {s:?}")))?;
        Ok(Fp::new(v, p))
    }

    fn from_int(v: i64, spec: &FieldSpec) -> Self {
        match spec {
            FieldSpec::Prime(p) => Fp::new(v, *p),
            FieldSpec::Rational => panic!("Fp literal under Q spec"),
        }
    }

    fn neg(&self) -> Self {
        if self.v == 0 {
            *self
        } else {
            Fp {
                v: self.p - self.v,
                p: self.p,
            }
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let p = Fp::unify(self.p, other.p);
        let v = if self.v >= other.v {
            self.v - other.v
        } else {
            self.v + p - other.v
        };
        Fp { v, p }
    }

    fn times(&self, other: &Self) -> Self {
        *self * *other
    }

    fn add_assign(&mut self, other: &Self) {
        *self = *self + *other;
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        if self.p == 0 {
            // unbound one
            return Some(*self);
        }
        Some(Fp {
            v: Fp::pow(self.v, self.p - 2, self.p),
            p: self.p,
        })
    }

    fn acc_new(v: &Self) -> Fp {
        *v
    }

    fn acc_axpy(dst: &mut [Fp], f: &Fp, src: &[Fp]) {
        let fv = f.v;
        let p = f.p;
        debug_assert_eq!(dst.len(), src.len());
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            // deferred reduction: residues stay below p, products below p^2
            d.v += fv * s.v;
            if d.p == 0 {
                d.p = p;
            }
        }
    }

    fn acc_budget(&self) -> usize {
        if self.p == 0 {
            usize::MAX
        } else {
            let head = u64::MAX / 2;
            (head / (self.p * self.p)).min(usize::MAX as u64) as usize
        }
    }

    fn acc_flush(a: &mut Fp) {
        a.v = Fp::reduce(a.v, a.p);
    }

    fn acc_done(mut a: Fp) -> Fp {
        Fp::acc_flush(&mut a);
        a
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational, always reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_i64(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

// Display is the serialized form: `n` or `n/d` in lowest terms.
impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat(BigRational::one())
    }
}

impl std::ops::Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl std::ops::Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Scalar for Rat {
    type Acc = Rat;

    fn field_spec(&self) -> Option<FieldSpec> {
        Some(FieldSpec::Rational)
    }

    fn parse(s: &str, spec: &FieldSpec) -> Result<Self> {
        if !matches!(spec, FieldSpec::Rational) {
            return Err(Error::invalid("rational element under prime spec"));
        }
        let t = s.trim();
        let parse_int = |x: &str| {
            BigInt::from_str(x).map_err(|_| Error::invalid(format!("bad rational {s:?}")))
        };
        match t.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(t)?))),
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::invalid(format!("zero denominator in {s:?}")));
                }
                Ok(Rat(BigRational::new(parse_int(n)?, den)))
            }
        }
    }

    fn from_int(v: i64, _spec: &FieldSpec) -> Self {
        Rat::from_i64(v)
    }

    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }

    fn sub(&self, other: &Self) -> Self {
        Rat(&self.0 - &other.0)
    }

    fn times(&self, other: &Self) -> Self {
        Rat(&self.0 * &other.0)
    }

    fn add_assign(&mut self, other: &Self) {
        self.0 += &other.0;
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    fn acc_new(v: &Self) -> Rat {
        v.clone()
    }

    fn acc_axpy(dst: &mut [Rat], f: &Rat, src: &[Rat]) {
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.0.is_zero() {
                d.0 += &f.0 * &s.0;
            }
        }
    }

    fn acc_budget(&self) -> usize {
        usize::MAX
    }

    fn acc_flush(_a: &mut Rat) {}

    fn acc_done(a: Rat) -> Rat {
        a
    }
}

/// Signum helper used by the fuzzer's small-coefficient sampling.
pub fn rat_is_negative(r: &Rat) -> bool {
    r.0.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_field_basics() {
        let a = Fp::new(5, 7);
        let b = Fp::new(4, 7);
        assert_eq!((a + b).residue(), 2);
        assert_eq!(a.sub(&b).residue(), 1);
        assert_eq!(a.times(&b).residue(), 6);
        assert_eq!(a.inv().unwrap().times(&a).residue(), 1);
        assert_eq!(Fp::new(-3, 7).residue(), 4);
        assert!(Fp::new(0, 7).inv().is_none());
    }

    #[test]
    fn unbound_literals_bind() {
        let z: Fp = Zero::zero();
        let a = Fp::new(5, 101);
        assert_eq!((z + a).modulus(), 101);
        let o: Fp = One::one();
        assert_eq!(o.times(&a).residue(), 5);
        assert!(z.is_zero());
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::Prime(101).validate().is_ok());
        assert!(FieldSpec::Prime(1).validate().is_err());
        assert!(FieldSpec::Prime(91).validate().is_err());
        assert!(FieldSpec::Rational.validate().is_ok());
    }

    #[test]
    fn rational_serialization() {
        let r = Rat::from_frac(-7, 2);
        assert_eq!(r.to_decimal(), "-7/2");
        assert_eq!(Rat::from_i64(3).to_decimal(), "3");
        let parsed = Rat::parse("-7/2", &FieldSpec::Rational).unwrap();
        assert_eq!(parsed, r);
        assert_eq!(Fp::parse("3", &FieldSpec::Prime(7)).unwrap().residue(), 3);
    }

    proptest! {
        #[test]
        fn rational_inverse_exact(n in -1000i64..1000, d in 1i64..1000) {
            prop_assume!(n != 0);
            let r = Rat::from_frac(n, d);
            let p = r.times(&r.inv().unwrap());
            prop_assert_eq!(p, Rat::from_i64(1));
        }

        #[test]
        fn fp_inverse_exact(v in 1u64..101) {
            let a = Fp::new(v as i64, 101);
            prop_assert_eq!(a.times(&a.inv().unwrap()).residue(), 1);
        }
    }
}
