//! Exact scalars: the rationals and the cyclotomic field Q(zeta8).
//!
//! `Cyclo8` stores `c0 + c1*z + c2*z^2 + c3*z^3` with `z^4 = -1`, so every
//! element has exactly one coefficient vector. `FieldValue` tags which of the
//! two fields a value lives in; mixing promotes Q into Q(zeta8).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// Exact square root, if this rational is a perfect square.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.0.numer())?;
        let d = exact_isqrt(self.0.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            col: 0,
            msg: format!("invalid rational literal '{s}'"),
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
    };
}
rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

/// Element of Q(zeta8) in the basis {1, z, z^2, z^3}, z^4 = -1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclo8 {
    pub c: [Rational; 4],
}

impl Cyclo8 {
    pub fn new(c: [Rational; 4]) -> Self {
        Cyclo8 { c }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo8 {
            c: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn zero() -> Self {
        Cyclo8::default()
    }

    pub fn one() -> Self {
        Cyclo8::from_rational(Rational::one())
    }

    /// `zeta^k` for any integer exponent.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c: [Rational; 4] = Default::default();
        if k < 4 {
            c[k] = Rational::one();
        } else {
            c[k - 4] = Rational::from_int(-1);
        }
        Cyclo8 { c }
    }

    /// The imaginary unit `i = zeta^2`.
    pub fn imag_unit() -> Self {
        Cyclo8::zeta_pow(2)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Rational::is_zero)
    }

    fn mul_ref(&self, o: &Cyclo8) -> Cyclo8 {
        let mut acc: [Rational; 8] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] += &(a * b);
            }
        }
        let [a0, a1, a2, a3, a4, a5, a6, _] = acc;
        Cyclo8 {
            c: [a0 - a4, a1 - a5, a2 - a6, a3],
        }
    }

    /// Galois conjugate under zeta -> zeta^k (k odd).
    pub fn galois(&self, k: i64) -> Cyclo8 {
        let mut out = Cyclo8::zero();
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let term = Cyclo8::zeta_pow(k * j as i64);
            for t in 0..4 {
                out.c[t] += &(a * &term.c[t]);
            }
        }
        out
    }

    /// Field norm down to Q: product of the four Galois conjugates.
    pub fn norm(&self) -> Rational {
        let p = self
            .mul_ref(&self.galois(3))
            .mul_ref(&self.galois(5))
            .mul_ref(&self.galois(7));
        debug_assert!(p.is_rational());
        p.c[0].clone()
    }

    pub fn inv(&self) -> Result<Cyclo8> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^{-1} = (product of the other conjugates) / norm(a)
        let others = self.galois(3).mul_ref(&self.galois(5)).mul_ref(&self.galois(7));
        let n = self.mul_ref(&others);
        let ninv = n.c[0].inv()?;
        let mut out = others;
        for x in out.c.iter_mut() {
            *x *= &ninv;
        }
        Ok(out)
    }

    /// Split into `A + B*i` with `A, B` in Q(sqrt2), each as `(u, v)` for `u + v*sqrt2`.
    fn to_tower(&self) -> ((Rational, Rational), (Rational, Rational)) {
        let half = Rational::new(1, 2).unwrap();
        let [c0, c1, c2, c3] = &self.c;
        let a = (c0.clone(), &(c1 - c3) * &half);
        let b = (c2.clone(), &(c1 + c3) * &half);
        (a, b)
    }

    fn from_tower(a: (Rational, Rational), b: (Rational, Rational)) -> Cyclo8 {
        let (u, v) = a;
        let (w, x) = b;
        Cyclo8 {
            c: [u, &v + &x, w, &x - &v],
        }
    }

    /// Exact square root inside Q(zeta8), when one exists.
    pub fn sqrt(&self) -> Option<Cyclo8> {
        if self.is_zero() {
            return Some(Cyclo8::zero());
        }
        let (a, b) = self.to_tower();
        let zero = (Rational::zero(), Rational::zero());
        if b.0.is_zero() && b.1.is_zero() {
            if let Some(r) = sqrt2_sqrt(&a) {
                return Some(Cyclo8::from_tower(r, zero));
            }
            let neg = (-&a.0, -&a.1);
            let r = sqrt2_sqrt(&neg)?;
            return Some(Cyclo8::from_tower(zero, r));
        }
        // (p + q i)^2 = a + b i  =>  p^2 is a root of X^2 - a X - b^2/4
        let a2 = sqrt2_mul(&a, &a);
        let b2 = sqrt2_mul(&b, &b);
        let disc = (&a2.0 + &b2.0, &a2.1 + &b2.1);
        let s = sqrt2_sqrt(&disc)?;
        let half = Rational::new(1, 2).unwrap();
        for sign in [1i64, -1] {
            let sg = Rational::from_int(sign);
            let x = (
                &(&a.0 + &(&sg * &s.0)) * &half,
                &(&a.1 + &(&sg * &s.1)) * &half,
            );
            if let Some(p) = sqrt2_sqrt(&x) {
                if p.0.is_zero() && p.1.is_zero() {
                    continue;
                }
                // q = b / (2p)
                let two_p = (&p.0 + &p.0, &p.1 + &p.1);
                let q = sqrt2_mul(&b, &sqrt2_inv(&two_p)?);
                let cand = Cyclo8::from_tower(p, q);
                if cand.mul_ref(&cand) == *self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

fn sqrt2_mul(x: &(Rational, Rational), y: &(Rational, Rational)) -> (Rational, Rational) {
    let two = Rational::from_int(2);
    (
        &(&x.0 * &y.0) + &(&two * &(&x.1 * &y.1)),
        &(&x.0 * &y.1) + &(&x.1 * &y.0),
    )
}

fn sqrt2_inv(x: &(Rational, Rational)) -> Option<(Rational, Rational)> {
    let two = Rational::from_int(2);
    let n = &(&x.0 * &x.0) - &(&two * &(&x.1 * &x.1));
    let ni = n.inv().ok()?;
    Some((&x.0 * &ni, -&(&x.1 * &ni)))
}

/// Square root in Q(sqrt2) of `u + v sqrt2`.
fn sqrt2_sqrt(x: &(Rational, Rational)) -> Option<(Rational, Rational)> {
    let (u, v) = x;
    if v.is_zero() {
        if let Some(r) = u.sqrt() {
            return Some((r, Rational::zero()));
        }
        // u = 2 q^2  =>  sqrt = q sqrt2
        let half = &Rational::new(1, 2).unwrap() * u;
        let q = half.sqrt()?;
        return Some((Rational::zero(), q));
    }
    // (p + q sqrt2)^2 = p^2 + 2q^2 + 2pq sqrt2
    let two = Rational::from_int(2);
    let disc = &(u * u) - &(&two * &(v * v));
    let s = disc.sqrt()?;
    let half = Rational::new(1, 2).unwrap();
    for cand in [&(u + &s) * &half, &(u - &s) * &half] {
        if let Some(p) = cand.sqrt() {
            if p.is_zero() {
                continue;
            }
            let q = v * &(&two * &p).inv().ok()?;
            return Some((p, q));
        }
    }
    None
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, c.abs())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    let base = match k {
                        1 => "zeta8".to_string(),
                        2 => "i".to_string(),
                        _ => format!("zeta8^{k}"),
                    };
                    if mag.is_one() {
                        write!(f, "{base}")?
                    } else {
                        write!(f, "{mag}*{base}")?
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which coefficient field a value or presentation lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FieldKind {
    #[serde(rename = "QQ")]
    Rationals,
    #[serde(rename = "QQ(zeta8)")]
    Zeta8,
}

impl FieldKind {
    pub fn join(self, other: FieldKind) -> FieldKind {
        self.max(other)
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Rationals => "QQ",
            FieldKind::Zeta8 => "QQ(zeta8)",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact scalar in Q or Q(zeta8).
#[derive(Clone)]
pub enum FieldValue {
    Q(Rational),
    Z8(Cyclo8),
}

impl Default for FieldValue {
    fn default() -> Self {
        FieldValue::zero()
    }
}

impl FieldValue {
    pub fn zero() -> Self {
        FieldValue::Q(Rational::zero())
    }

    pub fn one() -> Self {
        FieldValue::Q(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldValue::Q(Rational::from_int(n))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        FieldValue::Q(Rational::new(num, den).expect("nonzero denominator"))
    }

    pub fn zeta_pow(k: i64) -> Self {
        FieldValue::Z8(Cyclo8::zeta_pow(k))
    }

    pub fn imag_unit() -> Self {
        FieldValue::Z8(Cyclo8::imag_unit())
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldValue::Q(_) => FieldKind::Rationals,
            FieldValue::Z8(_) => FieldKind::Zeta8,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Q(r) => r.is_zero(),
            FieldValue::Z8(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Q(r) => r.is_one(),
            FieldValue::Z8(c) => c.is_rational() && c.c[0].is_one(),
        }
    }

    pub fn to_cyclo(&self) -> Cyclo8 {
        match self {
            FieldValue::Q(r) => Cyclo8::from_rational(r.clone()),
            FieldValue::Z8(c) => c.clone(),
        }
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            FieldValue::Q(r) => Some(r.clone()),
            FieldValue::Z8(c) if c.is_rational() => Some(c.c[0].clone()),
            _ => None,
        }
    }

    pub fn promote(&self, kind: FieldKind) -> FieldValue {
        match (self, kind) {
            (FieldValue::Q(r), FieldKind::Zeta8) => FieldValue::Z8(Cyclo8::from_rational(r.clone())),
            _ => self.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldValue> {
        match self {
            FieldValue::Q(r) => Ok(FieldValue::Q(r.inv()?)),
            FieldValue::Z8(c) => Ok(FieldValue::Z8(c.inv()?)),
        }
    }

    pub fn checked_div(&self, rhs: &FieldValue) -> Result<FieldValue> {
        Ok(self * &rhs.inv()?)
    }

    pub fn sqrt(&self) -> Option<FieldValue> {
        match self {
            FieldValue::Q(r) => {
                if let Some(s) = r.sqrt() {
                    return Some(FieldValue::Q(s));
                }
                Cyclo8::from_rational(r.clone()).sqrt().map(FieldValue::Z8)
            }
            FieldValue::Z8(c) => c.sqrt().map(FieldValue::Z8),
        }
    }

    /// Sign used when printing a leading term: true if the value "looks negative".
    pub fn looks_negative(&self) -> bool {
        match self {
            FieldValue::Q(r) => r.is_negative(),
            FieldValue::Z8(c) => c
                .c
                .iter()
                .find(|x| !x.is_zero())
                .map(|x| x.is_negative())
                .unwrap_or(false),
        }
    }

    /// True when the value is a single term (prints without parentheses).
    fn is_monomial(&self) -> bool {
        match self {
            FieldValue::Q(_) => true,
            FieldValue::Z8(c) => c.c.iter().filter(|x| !x.is_zero()).count() <= 1,
        }
    }

    /// Text for use as a coefficient in front of a monomial, e.g. `-3/2*zeta8^3`.
    pub fn coefficient_text(&self) -> String {
        let s = self.to_string();
        if self.is_monomial() {
            s
        } else {
            format!("({s})")
        }
    }
}

impl PartialEq for FieldValue {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldValue::Q(a), FieldValue::Q(b)) => a == b,
            (FieldValue::Z8(a), FieldValue::Z8(b)) => a == b,
            _ => self.to_cyclo() == other.to_cyclo(),
        }
    }
}

impl Eq for FieldValue {}

impl std::hash::Hash for FieldValue {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.to_cyclo().hash(state)
    }
}

impl PartialOrd for FieldValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for canonical sorting (not a field order).
impl Ord for FieldValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_cyclo().c.cmp(&other.to_cyclo().c)
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Q(r) => fmt::Display::fmt(r, f),
            FieldValue::Z8(c) => fmt::Display::fmt(c, f),
        }
    }
}

impl fmt::Debug for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for FieldValue {
    fn from(n: i64) -> Self {
        FieldValue::from_int(n)
    }
}

impl From<Rational> for FieldValue {
    fn from(r: Rational) -> Self {
        FieldValue::Q(r)
    }
}

impl From<Cyclo8> for FieldValue {
    fn from(c: Cyclo8) -> Self {
        FieldValue::Z8(c)
    }
}

impl Add<&FieldValue> for &FieldValue {
    type Output = FieldValue;
    fn add(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Q(a), FieldValue::Q(b)) => FieldValue::Q(a + b),
            _ => {
                let (a, b) = (self.to_cyclo(), rhs.to_cyclo());
                let [a0, a1, a2, a3] = a.c;
                let [b0, b1, b2, b3] = b.c;
                FieldValue::Z8(Cyclo8 {
                    c: [a0 + b0, a1 + b1, a2 + b2, a3 + b3],
                })
            }
        }
    }
}

impl Sub<&FieldValue> for &FieldValue {
    type Output = FieldValue;
    fn sub(self, rhs: &FieldValue) -> FieldValue {
        self + &(-rhs)
    }
}

impl Mul<&FieldValue> for &FieldValue {
    type Output = FieldValue;
    fn mul(self, rhs: &FieldValue) -> FieldValue {
        match (self, rhs) {
            (FieldValue::Q(a), FieldValue::Q(b)) => FieldValue::Q(a * b),
            (FieldValue::Q(a), FieldValue::Z8(c)) | (FieldValue::Z8(c), FieldValue::Q(a)) => {
                let mut out = c.clone();
                for x in out.c.iter_mut() {
                    *x *= a;
                }
                FieldValue::Z8(out)
            }
            (FieldValue::Z8(a), FieldValue::Z8(b)) => FieldValue::Z8(a.mul_ref(b)),
        }
    }
}

impl Div<&FieldValue> for &FieldValue {
    type Output = FieldValue;
    /// Panics on division by zero; use [`FieldValue::checked_div`] to get an error instead.
    fn div(self, rhs: &FieldValue) -> FieldValue {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        match self {
            FieldValue::Q(a) => FieldValue::Q(-a),
            FieldValue::Z8(c) => FieldValue::Z8(Cyclo8 {
                c: [-&c.c[0], -&c.c[1], -&c.c[2], -&c.c[3]],
            }),
        }
    }
}

impl Neg for FieldValue {
    type Output = FieldValue;
    fn neg(self) -> FieldValue {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: FieldValue) -> FieldValue {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldValue> for FieldValue {
            type Output = FieldValue;
            fn $m(self, rhs: &FieldValue) -> FieldValue {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&FieldValue> for FieldValue {
    fn add_assign(&mut self, rhs: &FieldValue) {
        match (&mut *self, rhs) {
            (FieldValue::Q(a), FieldValue::Q(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&FieldValue> for FieldValue {
    fn sub_assign(&mut self, rhs: &FieldValue) {
        match (&mut *self, rhs) {
            (FieldValue::Q(a), FieldValue::Q(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&FieldValue> for FieldValue {
    fn mul_assign(&mut self, rhs: &FieldValue) {
        match (&mut *self, rhs) {
            (FieldValue::Q(a), FieldValue::Q(b)) => *a *= b,
            _ => *self = &*self * rhs,
        }
    }
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(op: ArithOp, a: &FieldValue, b: &FieldValue) -> Result<FieldValue> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn is_zero(a: &FieldValue) -> bool {
    a.is_zero()
}

/// Parse a scalar literal such as `-3/2*zeta8^3`, `i`, `1 + zeta8`.
pub fn parse_scalar(text: &str) -> Result<FieldValue> {
    crate::presentations::parse_scalar_expr(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(k: i64) -> FieldValue {
        FieldValue::zeta_pow(k)
    }

    #[test]
    fn zeta_relations() {
        assert_eq!(&z(1) * &z(3), FieldValue::from_int(-1));
        let i = FieldValue::imag_unit();
        assert_eq!(&i * &i, FieldValue::from_int(-1));
        assert!((&(&i * &i) + &FieldValue::one()).is_zero());
        let z4_plus_1 = &(&(&z(1) * &z(1)) * &(&z(1) * &z(1))) + &FieldValue::one();
        assert!(z4_plus_1.is_zero());
        assert!(FieldValue::Q(Rational::zero()).is_zero());
    }

    #[test]
    fn inverse_of_one_plus_zeta() {
        let a = &FieldValue::one() + &z(1);
        let inv = field_arith(ArithOp::Div, &FieldValue::one(), &a).unwrap();
        // (1 - z + z^2 - z^3)/2
        let half = FieldValue::rational(1, 2);
        let expect = &half * &(&(&(&FieldValue::one() - &z(1)) + &z(2)) - &z(3));
        assert_eq!(inv, expect);
        // brute-force check of the product reduction
        assert_eq!(&a * &expect, FieldValue::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(field_arith(ArithOp::Div, &FieldValue::one(), &FieldValue::zero()).is_err());
        assert!(FieldValue::Z8(Cyclo8::zero()).inv().is_err());
    }

    #[test]
    fn mixed_arithmetic_promotes() {
        let q = FieldValue::from_int(3);
        let c = z(2);
        assert_eq!((&q + &c).kind(), FieldKind::Zeta8);
        assert_eq!((&q * &q).kind(), FieldKind::Rationals);
        // the embedding agrees with rational arithmetic
        assert_eq!(q.promote(FieldKind::Zeta8), q);
    }

    #[test]
    fn square_roots() {
        let two = FieldValue::from_int(2);
        let s = two.sqrt().unwrap();
        assert_eq!(&s * &s, two);
        let m1 = FieldValue::from_int(-1);
        let s = m1.sqrt().unwrap();
        assert_eq!(&s * &s, m1);
        let i = FieldValue::imag_unit();
        let s = i.sqrt().unwrap();
        assert_eq!(&s * &s, i);
        assert!(FieldValue::from_int(3).sqrt().is_none());
        let x = &(&FieldValue::from_int(2) + &z(1)) * &(&FieldValue::from_int(2) + &z(1));
        let s = x.sqrt().unwrap();
        assert_eq!(&s * &s, x);
    }

    #[test]
    fn display_forms() {
        assert_eq!(FieldValue::rational(-3, 2).to_string(), "-3/2");
        assert_eq!((&FieldValue::rational(-3, 2) * &z(3)).to_string(), "-3/2*zeta8^3");
        assert_eq!(FieldValue::imag_unit().to_string(), "i");
    }

    fn arb_cyclo() -> impl Strategy<Value = FieldValue> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), 4).prop_map(|v| {
            let c: Vec<Rational> = v.into_iter().map(|(n, d)| Rational::new(n, d).unwrap()).collect();
            FieldValue::Z8(Cyclo8::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), FieldValue::one());
            }
        }

        #[test]
        fn rational_embedding_is_a_homomorphism(p in -50i64..50, q in 1i64..20, r in -50i64..50, s in 1i64..20) {
            let a = FieldValue::rational(p, q);
            let b = FieldValue::rational(r, s);
            let ea = a.promote(FieldKind::Zeta8);
            let eb = b.promote(FieldKind::Zeta8);
            prop_assert_eq!((&a * &b).promote(FieldKind::Zeta8), &ea * &eb);
            prop_assert_eq!((&a + &b).promote(FieldKind::Zeta8), &ea + &eb);
        }

        #[test]
        fn canonical_form_idempotent(a in arb_cyclo()) {
            let once = &a * &FieldValue::one();
            let twice = &once * &FieldValue::one();
            prop_assert_eq!(once.to_cyclo().c, twice.to_cyclo().c);
        }
    }
}
