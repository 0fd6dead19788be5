//! Intersection numbers of ψ classes on moduli spaces of pointed stable
//! curves, computed by the Virasoro (DVV) recursion with the string equation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{big, factorial, int, odd_double_factorial, rat, Rational};
use crate::error::{domain, Error, Result};

/// Recursion refuses correlators on spaces of dimension above this.
pub const MAX_DIMENSION: u64 = 200;

/// ⟨τ_{a_1} ⋯ τ_{a_n}⟩_g. Exponents are kept sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Correlator {
    pub genus: u32,
    pub exponents: Vec<u32>,
}

impl Correlator {
    /// Requires 2g − 2 + n > 0.
    pub fn new(genus: u32, mut exponents: Vec<u32>) -> Result<Self> {
        if 2 * genus as i64 - 2 + exponents.len() as i64 <= 0 {
            return domain(format!("M_{{{genus},{}}} is not a stable moduli space", exponents.len()));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Correlator { genus, exponents })
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// 3g − 3 + n.
    pub fn dimension(&self) -> u64 {
        (3 * self.genus as u64 + self.n() as u64).saturating_sub(3)
    }

    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&a| a as u64).sum()
    }
}

impl fmt::Display for Correlator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "tau_{a}")?;
        }
        write!(f, ">_{}", self.genus)
    }
}

/// One step of the string equation: drops a τ0 and lowers each other
/// exponent in turn, skipping exponents already at zero.
pub fn string_reduce(c: &Correlator) -> Result<Vec<Correlator>> {
    let Some(pos) = c.exponents.iter().position(|&a| a == 0) else {
        return domain(format!("{c} has no tau_0 insertion"));
    };
    let mut rest = c.exponents.clone();
    rest.remove(pos);
    if 2 * c.genus as i64 - 2 + rest.len() as i64 <= 0 {
        return domain(format!("removing tau_0 from {c} leaves an unstable space"));
    }
    let mut out = Vec::new();
    for i in 0..rest.len() {
        if rest[i] == 0 {
            continue;
        }
        let mut e = rest.clone();
        e[i] -= 1;
        out.push(Correlator::new(c.genus, e)?);
    }
    Ok(out)
}

type Key = (u32, Vec<u32>);

static CACHE: LazyLock<RwLock<HashMap<Key, Rational>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// The value ⟨τ_{a_1} ⋯ τ_{a_n}⟩_g; zero unless Σ a_i = 3g − 3 + n.
pub fn correlator_value(c: &Correlator) -> Result<Rational> {
    if c.dimension() > MAX_DIMENSION {
        return Err(Error::Resource(format!(
            "{c} lives on a space of dimension {} > {MAX_DIMENSION}",
            c.dimension()
        )));
    }
    Ok(eval(c.genus, &c.exponents))
}

/// Number of cached correlators.
pub fn cache_len() -> usize {
    CACHE.read().map(|m| m.len()).unwrap_or(0)
}

fn eval(g: u32, a: &[u32]) -> Rational {
    let n = a.len() as i64;
    if 2 * g as i64 - 2 + n <= 0 {
        return Rational::zero();
    }
    let deg: u64 = a.iter().map(|&x| x as u64).sum();
    if deg != (3 * g as u64 + n as u64).saturating_sub(3) || (3 * g as i64 + n - 3) < 0 {
        return Rational::zero();
    }
    let mut key: Vec<u32> = a.to_vec();
    key.sort_unstable_by(|x, y| y.cmp(x));
    if let Some(v) = CACHE.read().ok().and_then(|m| m.get(&(g, key.clone())).cloned()) {
        return v;
    }
    let v = compute(g, &key);
    if let Ok(mut m) = CACHE.write() {
        m.insert((g, key), v.clone());
    }
    v
}

fn compute(g: u32, a: &[u32]) -> Rational {
    if g == 0 && a == [0, 0, 0] {
        return Rational::one();
    }
    if g == 1 && a == [1] {
        return rat(1, 24);
    }
    // string equation when a τ0 is present and removable
    if a.last() == Some(&0) && 2 * g as i64 - 2 + a.len() as i64 - 1 > 0 {
        let rest = &a[..a.len() - 1];
        let mut total = Rational::zero();
        for i in 0..rest.len() {
            if rest[i] > 0 {
                let mut e = rest.to_vec();
                e[i] -= 1;
                total += eval(g, &e);
            }
        }
        return total;
    }
    // DVV recursion on the largest exponent, written as k + 1
    let k = a[0] as i64 - 1;
    let others = &a[1..];
    let mut total = Rational::zero();
    for j in 0..others.len() {
        let dj = others[j] as i64;
        let coeff = big(odd_double_factorial(k + dj)) / big(odd_double_factorial(dj - 1));
        let mut e = others.to_vec();
        e[j] = (dj + k) as u32;
        total += coeff * eval(g, &e);
    }
    let half = rat(1, 2);
    for r in 0..k {
        let s = k - 1 - r;
        let coeff = big(odd_double_factorial(r) * odd_double_factorial(s));
        if g >= 1 {
            let mut e = others.to_vec();
            e.push(r as u32);
            e.push(s as u32);
            total += &half * &coeff * eval(g - 1, &e);
        }
        let m = others.len();
        for mask in 0u64..(1u64 << m) {
            let left: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| others[i]).collect();
            let right: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 0).map(|i| others[i]).collect();
            for g1 in 0..=g {
                let mut l = left.clone();
                l.push(r as u32);
                let mut rr = right.clone();
                rr.push(s as u32);
                let lv = eval(g1, &l);
                if lv.is_zero() {
                    continue;
                }
                total += &half * &coeff * lv * eval(g - g1, &rr);
            }
        }
    }
    total / big(odd_double_factorial(k + 1))
}

/// ∫ ψ^{3g−2} over M̄_{g,1} = 1 / (24^g g!).
pub fn psi_one_point(g: u32) -> Result<Rational> {
    if g < 1 {
        return domain("psi_one_point needs g >= 1");
    }
    Ok(Rational::new(1.into(), num_bigint::BigInt::from(24).pow(g) * factorial(g as u64)))
}

/// Numerator of the slope bound for the pullback of a divisor of slope s to
/// the Pandharipande test family: ½ ∫ over M̄_{g−1,3} of ψ^{3g−3}.
pub fn pand_numerator(g: u32) -> Result<Rational> {
    if g < 2 {
        return domain("pand_numerator needs g >= 2");
    }
    let three_point = Correlator::new(g - 1, vec![3 * g - 3, 0, 0])?;
    Ok(correlator_value(&three_point)? * rat(1, 2))
}

/// Denominator: (1/12)⟨τ_{3g−3} τ_2⟩_g − (1/12) ψ1pt(g) + (1/24) ψ1pt(g−1).
pub fn pand_denominator(g: u32) -> Result<Rational> {
    if g < 2 {
        return domain("pand_denominator needs g >= 2");
    }
    let two = correlator_value(&Correlator::new(g, vec![3 * g - 3, 2])?)?;
    Ok(two * rat(1, 12) - psi_one_point(g)? * rat(1, 12) + psi_one_point(g - 1)? * rat(1, 24))
}

/// The bound numerator / denominator, checked against 60 / (g + 4).
pub fn pand_bound(g: u32) -> Result<Rational> {
    let v = pand_numerator(g)? / pand_denominator(g)?;
    let closed = int(60) / int(g as i64 + 4);
    if v != closed {
        return Err(Error::Internal(format!("slope bound for g = {g} is {v}, expected {closed}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(g: u32, a: &[u32]) -> Rational {
        correlator_value(&Correlator::new(g, a.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(val(0, &[0, 0, 0]), int(1));
        assert_eq!(val(1, &[1]), rat(1, 24));
        assert_eq!(val(2, &[4]), rat(1, 1152));
        assert_eq!(val(2, &[2, 3]), rat(29, 5760));
        assert_eq!(val(3, &[7]), rat(1, 82944));
        assert_eq!(val(1, &[1, 1]), rat(1, 24));
        assert_eq!(val(0, &[1, 0, 0, 0]), int(1));
        assert_eq!(val(2, &[3]), int(0));
    }

    #[test]
    fn string_reduction() {
        let c = Correlator::new(1, vec![0, 2]).unwrap();
        assert_eq!(string_reduce(&c).unwrap(), vec![Correlator::new(1, vec![1]).unwrap()]);
        assert!(string_reduce(&Correlator::new(1, vec![1]).unwrap()).is_err());
        assert!(string_reduce(&Correlator::new(0, vec![0, 0, 0]).unwrap()).is_err());
        assert!(Correlator::new(0, vec![1, 1]).is_err());
    }

    #[test]
    fn resource_guard() {
        let c = Correlator::new(70, vec![207]).unwrap();
        assert!(matches!(correlator_value(&c), Err(Error::Resource(_))));
    }

    #[test]
    fn pand_small_genus() {
        assert_eq!(pand_numerator(2).unwrap(), rat(1, 48));
        assert_eq!(pand_denominator(2).unwrap(), rat(1, 480));
        assert_eq!(pand_bound(2).unwrap(), int(10));
        assert!(pand_bound(1).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Correlator::new(2, vec![2, 3]).unwrap().to_string(), "<tau_3 tau_2>_2");
    }
}
