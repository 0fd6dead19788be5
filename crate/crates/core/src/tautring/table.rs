//! Pushforward numbers of Chern-root monomials from W to the Picard variety.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{big, factorial, fmt_rational, serde_rational, Rational};
use crate::error::{Error, Result};

pub const BUILTIN_TABLE_JSON: &str = include_str!("../../data/pushforward_table.json");

#[derive(Serialize, Deserialize)]
struct TableFile {
    description: String,
    rank: u32,
    dimension: u32,
    base_theta_power: u32,
    picard_genus: u32,
    entries: Vec<TableEntry>,
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    roots: [u32; 3],
    #[serde(with = "serde_rational")]
    value: Rational,
}

/// Chern-root monomial x1^e1 x2^e2 x3^e3 of total degree k pushes forward to
/// `entry(e) * θ^(base_theta_power + k)`.
#[derive(Clone, Debug)]
pub struct PushforwardTable {
    description: String,
    pub dimension: u32,
    pub base_theta_power: u32,
    pub picard_genus: u32,
    entries: BTreeMap<[u32; 3], Rational>,
    checksum: String,
}

/// Outcome of one named table identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// A polynomial in the Chern roots x1, x2, x3 with integer coefficients.
pub type RootPolynomial = BTreeMap<[u32; 3], BigInt>;

fn root_mul(a: &RootPolynomial, b: &RootPolynomial) -> RootPolynomial {
    let mut out = RootPolynomial::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expands c1^a c2^b c3^c into Chern roots, c_i being the i-th elementary
/// symmetric polynomial.
pub fn expand_in_roots(c: [u32; 3]) -> RootPolynomial {
    let one = BigInt::one;
    let e1: RootPolynomial = [([1, 0, 0], one()), ([0, 1, 0], one()), ([0, 0, 1], one())].into();
    let e2: RootPolynomial = [([1, 1, 0], one()), ([1, 0, 1], one()), ([0, 1, 1], one())].into();
    let e3: RootPolynomial = [([1, 1, 1], one())].into();
    let mut acc: RootPolynomial = [([0, 0, 0], one())].into();
    for (poly, k) in [(&e1, c[0]), (&e2, c[1]), (&e3, c[2])] {
        for _ in 0..k {
            acc = root_mul(&acc, poly);
        }
    }
    acc
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

impl PushforwardTable {
    /// The checked-in genus-22 table.
    pub fn builtin() -> &'static PushforwardTable {
        static TABLE: OnceLock<PushforwardTable> = OnceLock::new();
        TABLE.get_or_init(|| Self::from_json(BUILTIN_TABLE_JSON).expect("built-in pushforward table is valid"))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        if file.rank != 3 {
            return Err(Error::Data(format!("table rank must be 3, found {}", file.rank)));
        }
        if file.base_theta_power + file.dimension != file.picard_genus {
            return Err(Error::Data(format!(
                "base theta power {} + dimension {} must equal the Picard genus {}",
                file.base_theta_power, file.dimension, file.picard_genus
            )));
        }
        let mut entries = BTreeMap::new();
        for e in file.entries {
            let k: u32 = e.roots.iter().sum();
            if k > file.dimension {
                return Err(Error::Data(format!("entry {:?} exceeds the dimension {}", e.roots, file.dimension)));
            }
            if entries.insert(e.roots, e.value).is_some() {
                return Err(Error::Data(format!("duplicate table entry {:?}", e.roots)));
            }
        }
        for roots in exponents_up_to(file.dimension) {
            if !entries.contains_key(&roots) {
                return Err(Error::Data(format!("missing table entry {roots:?}")));
            }
        }
        Ok(PushforwardTable {
            description: file.description,
            dimension: file.dimension,
            base_theta_power: file.base_theta_power,
            picard_genus: file.picard_genus,
            entries,
            checksum: hex(&Sha256::digest(text.as_bytes())),
        })
    }

    pub fn to_json(&self) -> String {
        let file = TableFile {
            description: self.description.clone(),
            rank: 3,
            dimension: self.dimension,
            base_theta_power: self.base_theta_power,
            picard_genus: self.picard_genus,
            entries: self.entries.iter().map(|(r, v)| TableEntry { roots: *r, value: v.clone() }).collect(),
        };
        serde_json::to_string_pretty(&file).expect("table serializes")
    }

    /// SHA-256 of the JSON text the table was loaded from.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn entry(&self, roots: [u32; 3]) -> Option<&Rational> {
        self.entries.get(&roots)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.entries.iter()
    }

    /// Pushforward coefficient of c1^a c2^b c3^c (the power of θ is implied by
    /// the weighted degree).
    pub fn push_chern_monomial(&self, c: [u32; 3]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (roots, coeff) in expand_in_roots(c) {
            let v = self.entry(roots).ok_or_else(|| {
                Error::Degree(format!(
                    "c1^{} c2^{} c3^{} exceeds the dimension {} of W",
                    c[0], c[1], c[2], self.dimension
                ))
            })?;
            total += v * big(coeff);
        }
        Ok(total)
    }

    fn e(&self, roots: [u32; 3]) -> Rational {
        self.entries.get(&roots).cloned().unwrap_or_else(Rational::zero)
    }

    /// The vanishing and sign relations among the entries, plus integrality
    /// of every entry against θ^g / g!.
    pub fn identity_checks(&self) -> Vec<IdentityCheck> {
        let z = Rational::zero;
        let e = |r| self.e(r);
        let mut checks: Vec<(String, bool)> = vec![
            ("x2 = 0".into(), e([0, 1, 0]) == z()),
            ("x3 = 0".into(), e([0, 0, 1]) == z()),
            ("x1 x3 = 0".into(), e([1, 0, 1]) == z()),
            ("x2 x3 = 0".into(), e([0, 1, 1]) == z()),
            ("x3^2 = 0".into(), e([0, 0, 2]) == z()),
            ("x2^2 = -x1 x2".into(), e([0, 2, 0]) == -e([1, 1, 0])),
            ("x1 x2^2 = 0".into(), e([1, 2, 0]) == z()),
            ("x1^2 x3 = 0".into(), e([2, 0, 1]) == z()),
            ("x2 x3^2 = 0".into(), e([0, 1, 2]) == z()),
            ("x1^2 x2 = -x2^3".into(), e([2, 1, 0]) == -e([0, 3, 0])),
            ("x1 x3^2 = -x1 x2 x3".into(), e([1, 0, 2]) == -e([1, 1, 1])),
            ("x2^2 x3 = -x1 x2 x3".into(), e([0, 2, 1]) == -e([1, 1, 1])),
            ("x3^3 = x1 x2 x3".into(), e([0, 0, 3]) == e([1, 1, 1])),
        ];
        let g_fact = big(factorial(self.picard_genus as u64));
        for (roots, v) in &self.entries {
            checks.push((
                format!("{}! * entry{roots:?} = {} is an integer", self.picard_genus, fmt_rational(&(v * &g_fact))),
                (v * &g_fact).is_integer(),
            ));
        }
        checks.into_iter().map(|(name, holds)| IdentityCheck { name, holds }).collect()
    }

    pub fn verify(&self) -> Result<()> {
        let failed: Vec<_> = self.identity_checks().into_iter().filter(|c| !c.holds).map(|c| c.name).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Data(format!("pushforward table identities fail: {}", failed.join("; "))))
        }
    }
}

fn exponents_up_to(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn builtin_table_verifies() {
        let t = PushforwardTable::builtin();
        t.verify().unwrap();
        assert_eq!(t.entries().count(), 20);
        assert_eq!(t.checksum().len(), 64);
    }

    #[test]
    fn json_round_trip() {
        let t = PushforwardTable::builtin();
        let again = PushforwardTable::from_json(&t.to_json()).unwrap();
        assert_eq!(again.entries, t.entries);
    }

    #[test]
    fn rejects_missing_and_duplicate_entries() {
        let mut v: serde_json::Value = serde_json::from_str(BUILTIN_TABLE_JSON).unwrap();
        let entries = v["entries"].as_array_mut().unwrap();
        let first = entries[0].clone();
        entries.push(first);
        assert!(PushforwardTable::from_json(&v.to_string()).is_err());
        v["entries"].as_array_mut().unwrap().truncate(5);
        assert!(PushforwardTable::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn tampered_table_fails_identities() {
        let mut v: serde_json::Value = serde_json::from_str(BUILTIN_TABLE_JSON).unwrap();
        for e in v["entries"].as_array_mut().unwrap() {
            if e["roots"] == serde_json::json!([0, 3, 0]) {
                e["value"] = "1/6584094720000".into();
            }
        }
        let t = PushforwardTable::from_json(&v.to_string()).unwrap();
        assert!(t.verify().is_err());
    }

    #[test]
    fn root_expansion() {
        // c1 c2 = sum over ordered pairs x_i^2 x_j plus 3 x1 x2 x3
        let p = expand_in_roots([1, 1, 0]);
        assert_eq!(p[&[2, 1, 0]], BigInt::from(1));
        assert_eq!(p[&[1, 1, 1]], BigInt::from(3));
        assert_eq!(p.values().sum::<BigInt>(), BigInt::from(9));
    }

    #[test]
    fn chern_monomial_pushforwards() {
        let t = PushforwardTable::builtin();
        assert_eq!(t.push_chern_monomial([0, 0, 0]).unwrap(), rat(1, 73156608000));
        assert_eq!(t.push_chern_monomial([1, 0, 0]).unwrap(), rat(1, 219469824000));
        // c2 = x1x2 + x1x3 + x2x3
        assert_eq!(t.push_chern_monomial([0, 1, 0]).unwrap(), rat(1, 1755758592000));
        assert!(t.push_chern_monomial([0, 0, 2]).is_err());
        assert_eq!(t.push_chern_monomial([0, 0, 1]).unwrap(), rat(1, 36870930432000) * int(1));
    }
}
