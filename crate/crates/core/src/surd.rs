//! Exact sums `Σ c_r √r` with rational coefficients and squarefree radicands.
//!
//! Signs are decided exactly. Writing `S = A + B√p` for the largest prime `p`
//! occurring in a radicand, `A` and `B` involve only smaller primes; when their
//! signs disagree, `sign(S)` follows from `sign(A² − pB²)`, which again lives
//! in the smaller field. The recursion ends at plain rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Surd {
    terms: BTreeMap<u64, BigRational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn rational(q: BigRational) -> Self {
        let mut s = Surd::zero();
        s.add_term(1, q);
        s
    }

    pub fn integer(k: i64) -> Self {
        Surd::rational(BigRational::from_integer(k.into()))
    }

    /// `√m`, with square factors pulled out.
    pub fn sqrt(m: u64) -> Self {
        if m == 0 {
            return Surd::zero();
        }
        let (outside, inside) = split_square(m);
        let mut s = Surd::zero();
        s.add_term(inside, BigRational::from_integer(outside.into()));
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, if no radical survives.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&r, c)| (r, c))
    }

    fn add_term(&mut self, radicand: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.terms)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&r, c)| c.to_f64().unwrap_or(f64::NAN) * (r as f64).sqrt())
            .sum()
    }

    /// Decimal expansion rounded to `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let fine = BigInt::from(10u32).pow(digits + 12);
        let mut total = BigRational::zero();
        for (&r, c) in &self.terms {
            let root = (BigInt::from(r) * &fine * &fine).sqrt();
            total += c * BigRational::new(root, fine.clone());
        }
        let scaled = (total * BigRational::from_integer(scale.clone())).round().to_integer();
        let negative = scaled.is_negative();
        let (int, frac) = scaled.abs().div_rem(&scale);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits as usize)
        }
    }
}

fn split_square(mut m: u64) -> (u64, u64) {
    let mut outside = 1;
    let mut k = 2;
    while k * k <= m {
        while m.is_multiple_of(k * k) {
            m /= k * k;
            outside *= k;
        }
        k += 1;
    }
    (outside, m)
}

fn largest_prime(mut m: u64) -> u64 {
    let mut best = 1;
    let mut k = 2;
    while k * k <= m {
        while m.is_multiple_of(k) {
            m /= k;
            best = k;
        }
        k += 1;
    }
    if m > 1 {
        best = m;
    }
    best
}

fn sign_of(terms: &BTreeMap<u64, BigRational>) -> Ordering {
    let Some(p) = terms.keys().map(|&r| largest_prime(r)).max() else {
        return Ordering::Equal;
    };
    if p == 1 {
        return terms[&1].cmp(&BigRational::zero());
    }
    let mut a = Surd::zero();
    let mut b = Surd::zero();
    for (&r, c) in terms {
        if r % p == 0 {
            b.add_term(r / p, c.clone());
        } else {
            a.add_term(r, c.clone());
        }
    }
    let (sa, sb) = (a.signum(), b.signum());
    if sa == Ordering::Equal || sa == sb {
        return sb.then(sa);
    }
    if sb == Ordering::Equal {
        return sa;
    }
    let p_big = Surd::integer(p as i64);
    match (&(&a * &a) - &(&(&b * &b) * &p_big)).signum() {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<i64> for Surd {
    fn from(k: i64) -> Self {
        Surd::integer(k)
    }
}

impl From<BigRational> for Surd {
    fn from(q: BigRational) -> Self {
        Surd::rational(q)
    }
}

impl Add<&Surd> for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(mut self, rhs: Surd) -> Surd {
        self += &rhs;
        self
    }
}

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        for (&r, c) in &rhs.terms {
            self.add_term(r, c.clone());
        }
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(&r, c)| (r, -c)).collect(),
        }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl Sub<&Surd> for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (&r, c) in &rhs.terms {
            out.add_term(r, -c);
        }
        out
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        &self - &rhs
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&r1, c1) in &self.terms {
            for (&r2, c2) in &rhs.terms {
                let g = r1.gcd(&r2);
                let c = c1 * c2 * BigRational::from_integer(g.into());
                out.add_term((r1 / g) * (r2 / g), c);
            }
        }
        out
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        &self * &rhs
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&r, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if r == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "√{r}")?;
            } else {
                write!(f, "{mag}√{r}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(k: u64) -> Surd {
        Surd::sqrt(k)
    }

    #[test]
    fn normal_forms() {
        assert_eq!(s(12), &Surd::integer(2) * &s(3));
        assert_eq!(s(4), Surd::integer(2));
        assert!(s(0).is_zero());
        assert!((&s(8) - &(&Surd::integer(2) * &s(2))).is_zero());
        assert_eq!(&s(2) * &s(6), &Surd::integer(2) * &s(3));
        let sum = &s(2) + &s(3);
        assert_eq!(&sum * &sum, &Surd::integer(5) + &(&Surd::integer(2) * &s(6)));
        assert_eq!((&s(3) - &s(2)).to_string(), "-√2 + √3");
        assert_eq!(Surd::zero().to_string(), "0");
        assert_eq!(s(3).to_decimal(6), "1.732051");
        assert_eq!((-s(2)).to_decimal(3), "-1.414");
    }

    #[test]
    fn close_signs() {
        // √2 + √3 vs √10: 5 + 2√6 ≈ 9.899 < 10
        assert_eq!((&(&s(2) + &s(3)) - &s(10)).signum(), Ordering::Less);
        // √5 + √6 + √7 ≈ 7.331 and √2 + √3 + √21 ≈ 7.729
        let lhs = &(&s(5) + &s(6)) + &s(7);
        let rhs = &(&s(2) + &s(3)) + &s(21);
        assert_eq!(lhs.cmp(&rhs), Ordering::Less);
        // 2√2 − √3 ≈ 1.096
        let x = &(&Surd::integer(2) * &s(2)) - &s(3);
        assert_eq!((&x - &Surd::rational(BigRational::new(1096.into(), 1000.into()))).signum(), Ordering::Greater);
        assert_eq!((&x - &Surd::rational(BigRational::new(1097.into(), 1000.into()))).signum(), Ordering::Less);
        assert!(s(3) > s(2));
        assert_eq!(s(7).cmp(&s(7)), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn sign_matches_floats(coefs in proptest::collection::vec(-6i64..=6, 6)) {
            let radicands = [1u64, 2, 3, 5, 6, 10];
            let mut x = Surd::zero();
            for (&c, &r) in coefs.iter().zip(&radicands) {
                x += &(&Surd::integer(c) * &s(r));
            }
            let approx = x.to_f64();
            prop_assume!(approx.abs() > 1e-9 || x.is_zero());
            let expected = if x.is_zero() { Ordering::Equal } else { approx.partial_cmp(&0.0).unwrap() };
            prop_assert_eq!(x.signum(), expected);
            prop_assert_eq!((-&x).signum(), expected.reverse());
        }

        #[test]
        fn ring_laws(a in -20i64..20, b in -20i64..20, r in 1u64..30, t in 1u64..30) {
            let x = &Surd::integer(a) * &s(r);
            let y = &Surd::integer(b) * &s(t);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&(&x + &y) - &y - x.clone()).is_zero());
        }
    }
}
