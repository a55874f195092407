use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Descriptor handed to [`make_field`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime(u64),
    Rationals,
}

/// A validated ground field: `F_p` for a prime `p < 2^32`, or `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

/// An exact scalar. Prime-field residues are kept in `0..p`; rationals are
/// always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Mod(u64),
    Rat(BigRational),
}

pub fn make_field(kind: FieldKind) -> Result<FieldSpec> {
    FieldSpec::new(kind)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn new(kind: FieldKind) -> Result<Self> {
        if let FieldKind::Prime(p) = kind {
            if p > u32::MAX as u64 {
                return Err(Error::ModulusTooLarge(p));
            }
            if !is_prime(p) {
                return Err(Error::NonPrimeModulus(p));
            }
        }
        Ok(FieldSpec { kind })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(FieldKind::Prime(p))
    }

    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// The characteristic; `0` for `Q`.
    pub fn characteristic(&self) -> u64 {
        match self.kind {
            FieldKind::Prime(p) => p,
            FieldKind::Rationals => 0,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self.kind {
            FieldKind::Prime(_) => FieldElement::Mod(0),
            FieldKind::Rationals => FieldElement::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElement {
        match self.kind {
            FieldKind::Prime(_) => FieldElement::Mod(1),
            FieldKind::Rationals => FieldElement::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self.kind {
            FieldKind::Prime(p) => FieldElement::Mod(n.rem_euclid(p as i64) as u64),
            FieldKind::Rationals => FieldElement::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Builds `num / den`. Fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        match self.kind {
            FieldKind::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u64::try_from(r).expect("residue fits in u64")
                };
                let d = reduce(den);
                if d == 0 {
                    return Err(Error::InvalidScalar(format!("{num}/{den}"), self.to_string()));
                }
                Ok(FieldElement::Mod(mul_mod(reduce(num), inv_mod(d, p), p)))
            }
            FieldKind::Rationals => {
                if den.is_zero() {
                    return Err(Error::InvalidScalar(format!("{num}/{den}"), self.to_string()));
                }
                Ok(FieldElement::Rat(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    /// Whether `a` is a well-formed element of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        match (self.kind, a) {
            (FieldKind::Prime(p), FieldElement::Mod(x)) => *x < p,
            (FieldKind::Rationals, FieldElement::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn check(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::InvalidScalar(a.to_string(), self.to_string()))
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self.kind, a, b) {
            (FieldKind::Prime(p), FieldElement::Mod(x), FieldElement::Mod(y)) => FieldElement::Mod((x + y) % p),
            (FieldKind::Rationals, FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x + y),
            _ => panic!("scalar {a} or {b} does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self.kind, a) {
            (FieldKind::Prime(p), FieldElement::Mod(x)) => FieldElement::Mod((p - x) % p),
            (FieldKind::Rationals, FieldElement::Rat(x)) => FieldElement::Rat(-x),
            _ => panic!("scalar {a} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self.kind, a, b) {
            (FieldKind::Prime(p), FieldElement::Mod(x), FieldElement::Mod(y)) => FieldElement::Mod(mul_mod(*x, *y, p)),
            (FieldKind::Rationals, FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(x * y),
            _ => panic!("scalar {a} or {b} does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        match (self.kind, a) {
            (FieldKind::Prime(p), FieldElement::Mod(x)) => Some(FieldElement::Mod(inv_mod(*x, p))),
            (FieldKind::Rationals, FieldElement::Rat(x)) => Some(FieldElement::Rat(x.recip())),
            _ => panic!("scalar {a} does not belong to {self}"),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

/// Inverse of a nonzero residue by Fermat's little theorem.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Mod(x) => *x == 0,
            FieldElement::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Mod(x) => *x == 1,
            FieldElement::Rat(x) => x.is_one(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Mod(x) => write!(f, "{x}"),
            FieldElement::Rat(x) if x.is_integer() => write!(f, "{}", x.numer()),
            FieldElement::Rat(x) => {
                let sign = if x.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", x.numer().abs(), x.denom())
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime(p) => write!(f, "F{p}"),
            FieldKind::Rationals => write!(f, "Q"),
        }
    }
}

/// Parses the short forms `F<p>` and `Q`, and the algebra-file form `Fp:<p>`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::rationals());
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::Schema(format!("unrecognized field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Schema(format!("unrecognized field `{s}`")))?;
        FieldSpec::prime(p)
    }
}
