use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest admissible characteristic for prime-field arithmetic.
pub const MAX_PRIME: u64 = 1 << 31;

/// Ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; prime-field residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u32, p: u32 },
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

impl Field {
    /// Prime field of characteristic `p`; rejects composites and `p > 2^31`.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime at most 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { value: n.rem_euclid(p as i64) as u32, p },
        }
    }

    /// `num/den` in this field. Fails when `den` vanishes in the field.
    pub fn frac(self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.int(den);
        if d.is_zero() {
            return Err(Error::Input(format!("denominator {den} vanishes in {self}")));
        }
        Ok(&self.int(num) / &d)
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = x % &m;
                    let r = if r.is_negative() { r + &m } else { r };
                    u32::try_from(r).expect("residue fits in u32")
                };
                let den = reduce(q.denom());
                if den == 0 {
                    return Err(Error::Input(format!("denominator of {q} vanishes mod {p}")));
                }
                let n = Scalar::Fp { value: reduce(q.numer()), p };
                Ok(&n / &Scalar::Fp { value: den, p })
            }
        }
    }

    /// Parses a literal `"a"` or `"a/b"` (decimal, optional leading minus).
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Input(format!("malformed scalar literal '{text}'"));
        let parse_int = |s: &str| -> Result<BigInt> {
            let s = s.trim();
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse::<BigInt>().map_err(|_| bad())
        };
        let q = match t.split_once('/') {
            None => BigRational::from_integer(parse_int(t)?),
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() || d.is_negative() {
                    return Err(bad());
                }
                BigRational::new(parse_int(n)?, d)
            }
        };
        self.from_rational(&q)
    }

    /// Uniform-ish sample: over the rationals a fraction with numerator in
    /// `[-bound, bound]` and denominator in `[1, bound]`; over F_p a residue.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R, bound: i64) -> Scalar {
        match self {
            Field::Rational => {
                let n = rng.random_range(-bound..=bound);
                let d = rng.random_range(1..=bound.max(1));
                Scalar::Q(BigRational::new(n.into(), d.into()))
            }
            Field::Prime(p) => Scalar::Fp { value: rng.random_range(0..p), p },
        }
    }

    /// Like [`Field::sample`] but never zero.
    pub fn sample_nonzero<R: Rng + ?Sized>(self, rng: &mut R, bound: i64) -> Scalar {
        loop {
            let s = self.sample(rng, bound);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// All elements of a prime field, in residue order.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Fp { value: v, p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Input(format!("malformed field tag '{s}'")))?;
            return Field::prime(p);
        }
        Err(Error::Input(format!("unknown field '{s}' (expected Q or Fp:<prime>)")))
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, p } => Scalar::Fp { value: inv_mod(*value, *p), p: *p },
        })
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut r = self.field().one();
        for _ in 0..e.unsigned_abs() {
            r = &r * &base;
        }
        r
    }

    /// Some `e`-th root in the same field, when one exists.
    pub fn nth_root(&self, e: u32) -> Option<Scalar> {
        match (self, e) {
            (_, 0) => None,
            (_, 1) => Some(self.clone()),
            (_, 2) => self.sqrt(),
            (Scalar::Q(q), _) => {
                if q.is_negative() && e.is_multiple_of(2) {
                    return None;
                }
                let n = q.numer().nth_root(e);
                let d = q.denom().nth_root(e);
                let r = BigRational::new(n, d);
                (num_traits::pow(r.clone(), e as usize) == *q).then_some(Scalar::Q(r))
            }
            (Scalar::Fp { p, .. }, _) => {
                (0..*p).map(|v| Scalar::Fp { value: v, p: *p }).find(|s| s.pow(e as i64) == *self)
            }
        }
    }

    /// A square root in the same field, when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Q(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Fp { value, p } => {
                let (v, p) = (*value as u64, *p as u64);
                if v == 0 || p == 2 {
                    return Some(self.clone());
                }
                if pow_mod(v, (p - 1) / 2, p) != 1 {
                    return None;
                }
                // Tonelli-Shanks
                let (mut q, mut s) = (p - 1, 0u32);
                while q % 2 == 0 {
                    q /= 2;
                    s += 1;
                }
                let mut z = 2u64;
                while pow_mod(z, (p - 1) / 2, p) != p - 1 {
                    z += 1;
                }
                let mut m = s;
                let mut c = pow_mod(z, q, p);
                let mut t = pow_mod(v, q, p);
                let mut r = pow_mod(v, q.div_ceil(2), p);
                while t != 1 {
                    let mut i = 0u32;
                    let mut tt = t;
                    while tt != 1 {
                        tt = tt * tt % p;
                        i += 1;
                    }
                    let b = pow_mod(c, 1u64 << (m - i - 1), p);
                    m = i;
                    c = b * b % p;
                    t = t * c % p;
                    r = r * b % p;
                }
                Some(Scalar::Fp { value: r as u32, p: p as u32 })
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, p: q }) if p == q => {
                Scalar::Fp { value: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if self.field() != rhs.field() {
            mismatch(self, rhs);
        }
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, p } => Scalar::Fp { value: (*p - *value) % *p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let q = Field::Rational;
        for lit in ["0", "7", "-3", "1/2", "-5/6"] {
            assert_eq!(q.parse(lit).unwrap().to_string(), lit);
        }
        assert_eq!(q.parse("4/6").unwrap().to_string(), "2/3");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        assert!(q.parse("1.5").is_err());
        assert!(q.parse("1/-2").is_err());
    }

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(3).is_ok());
        assert!(Field::prime(2147483647).is_ok());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(1 << 32).is_err());
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("Fp:8".parse::<Field>().is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.int(3);
        let b = f.int(5);
        assert_eq!(&a + &b, f.int(1));
        assert_eq!(&a - &b, f.int(5));
        assert_eq!(&a * &b, f.int(1));
        assert_eq!(&a / &b, f.int(9));
        assert_eq!(f.parse("-1").unwrap(), f.int(6));
        assert_eq!(f.parse("1/2").unwrap(), f.int(4));
        assert_eq!(f.int(2).sqrt().map(|r| &r * &r), Some(f.int(2)));
        assert_eq!(f.int(3).sqrt(), None);
    }

    #[test]
    fn rational_sqrt() {
        let q = Field::Rational;
        assert_eq!(q.parse("9/4").unwrap().sqrt(), Some(q.parse("3/2").unwrap()));
        assert_eq!(q.int(5).sqrt(), None);
        assert_eq!(q.int(-4).sqrt(), None);
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_is_fatal() {
        let _ = &Field::Rational.one() + &Field::Prime(3).one();
    }
}
