//! Exact eigenvalue scalars.
//!
//! Additive eigenvalues are Gaussian rationals. Multiplicative eigenvalues are
//! a positive rational modulus times a root-of-unity direction e^{2πi·arg}
//! with rational `arg` reduced into [0, 1).

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{DspError, Result};

/// Abelian group operations shared by both eigenvalue kinds. `combine` is
/// addition for additive scalars and multiplication for multiplicative ones.
pub trait EigenScalar: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync {
    fn identity() -> Self;
    fn combine(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn to_complex(&self) -> Complex64;

    /// `self` combined with itself `k` times.
    fn times(&self, k: usize) -> Self;

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).ok()?;
            let den = BigInt::from_str(den.trim()).ok()?;
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
        None => BigInt::from_str(text).ok().map(BigRational::from_integer),
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// re + im·i with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveScalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl AdditiveScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        AdditiveScalar { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        AdditiveScalar { re, im: BigRational::zero() }
    }

    pub fn from_ints(num: i64, den: i64) -> Self {
        AdditiveScalar::real(BigRational::new(num.into(), den.into()))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        AdditiveScalar { re: &self.re * factor, im: &self.im * factor }
    }
}

impl EigenScalar for AdditiveScalar {
    fn identity() -> Self {
        AdditiveScalar::real(BigRational::zero())
    }

    fn combine(&self, other: &Self) -> Self {
        AdditiveScalar { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    fn inverse(&self) -> Self {
        AdditiveScalar { re: -&self.re, im: -&self.im }
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn times(&self, k: usize) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }
}

impl fmt::Display for AdditiveScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{} i", self.re, -&self.im)
        } else {
            write!(f, "{}+{} i", self.re, self.im)
        }
    }
}

impl FromStr for AdditiveScalar {
    type Err = DspError;

    /// Accepts `a/b`, `a/b+c/d i`, `a/b-c/d i`, `c/d i`, `i` and `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || DspError::ScalarParse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = compact.strip_suffix('i') else {
            return parse_rational(&compact).map(AdditiveScalar::real).ok_or_else(err);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        // Split at the last sign that is not leading.
        let cut = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (re_text, im_text) = match cut {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t.strip_prefix('+').unwrap_or(t)).ok_or_else(err)?,
        };
        let re = parse_rational(re_text).ok_or_else(err)?;
        Ok(AdditiveScalar { re, im })
    }
}

/// modulus · e^{2πi·arg}, modulus > 0, arg ∈ [0, 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicativeScalar {
    modulus: BigRational,
    arg: BigRational,
}

fn reduce_mod_one(q: BigRational) -> BigRational {
    let floor = q.floor();
    q - floor
}

impl MultiplicativeScalar {
    pub fn new(modulus: BigRational, arg: BigRational) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(DspError::InvalidInput(format!("modulus {modulus} is not positive")));
        }
        Ok(MultiplicativeScalar { modulus, arg: reduce_mod_one(arg) })
    }

    /// e^{2πi·num/den}.
    pub fn root_of_unity(num: i64, den: i64) -> Self {
        MultiplicativeScalar {
            modulus: BigRational::one(),
            arg: reduce_mod_one(BigRational::new(num.into(), den.into())),
        }
    }

    pub fn modulus(&self) -> &BigRational {
        &self.modulus
    }

    pub fn arg(&self) -> &BigRational {
        &self.arg
    }

    /// Order as a root of unity, if it is one.
    pub fn root_order(&self) -> Option<usize> {
        if !self.modulus.is_one() {
            return None;
        }
        self.arg.denom().to_usize()
    }

    /// True iff this is a root of unity of order exactly `d`.
    pub fn is_primitive_root(&self, d: usize) -> bool {
        self.root_order() == Some(d)
    }
}

impl EigenScalar for MultiplicativeScalar {
    fn identity() -> Self {
        MultiplicativeScalar { modulus: BigRational::one(), arg: BigRational::zero() }
    }

    fn combine(&self, other: &Self) -> Self {
        MultiplicativeScalar {
            modulus: &self.modulus * &other.modulus,
            arg: reduce_mod_one(&self.arg + &other.arg),
        }
    }

    fn inverse(&self) -> Self {
        MultiplicativeScalar { modulus: self.modulus.recip(), arg: reduce_mod_one(-&self.arg) }
    }

    fn to_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * rational_to_f64(&self.arg);
        Complex64::from_polar(rational_to_f64(&self.modulus), theta)
    }

    fn times(&self, k: usize) -> Self {
        let k_big = BigInt::from(k);
        MultiplicativeScalar {
            modulus: BigRational::new(self.modulus.numer().pow(k as u32), self.modulus.denom().pow(k as u32)),
            arg: reduce_mod_one(&self.arg * BigRational::from_integer(k_big)),
        }
    }
}

impl fmt::Display for MultiplicativeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{mod: {}, arg: {}}}", self.modulus, self.arg)
    }
}

impl FromStr for MultiplicativeScalar {
    type Err = DspError;

    /// Accepts `{mod: a/b, arg: p/q}`, a nonzero real rational, `i` or `-i`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || DspError::ScalarParse(s.to_string());
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let mut modulus = None;
            let mut arg = None;
            for field in inner.split(',') {
                let (key, value) = field.split_once(':').ok_or_else(err)?;
                let value = parse_rational(value).ok_or_else(err)?;
                match key.trim() {
                    "mod" => modulus = Some(value),
                    "arg" => arg = Some(value),
                    _ => return Err(err()),
                }
            }
            return MultiplicativeScalar::new(modulus.ok_or_else(err)?, arg.ok_or_else(err)?);
        }
        match t {
            "i" | "+i" => return Ok(MultiplicativeScalar::root_of_unity(1, 4)),
            "-i" => return Ok(MultiplicativeScalar::root_of_unity(3, 4)),
            _ => {}
        }
        let q = parse_rational(t).ok_or_else(err)?;
        if q.is_zero() {
            return Err(DspError::InvalidInput("zero is not an invertible eigenvalue".into()));
        }
        let arg = if q.is_negative() { BigRational::new(1.into(), 2.into()) } else { BigRational::zero() };
        MultiplicativeScalar::new(q.abs(), arg)
    }
}

macro_rules! serialize_as_text {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
                s.serialize_str(&self.to_string())
            }
        }
    };
}

serialize_as_text!(AdditiveScalar);
serialize_as_text!(MultiplicativeScalar);

/// gcd of a nonempty list of positive integers.
pub fn gcd_all(values: impl IntoIterator<Item = usize>) -> usize {
    values.into_iter().fold(0, |g, v| g.gcd(&v))
}
