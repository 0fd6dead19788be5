//! Brill-Noether numerics: linear series, limit linear series on tree-like
//! curves, formal bundle arithmetic, Severi variety counts and liaison.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{big, binom, binom_i64, int, Rational};
use crate::error::{domain, Error, Result};

/// ρ(g, r, d) = g − (r + 1)(g − d + r).
pub fn rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// Vanishing orders a_0 < … < a_r of a g^r_d at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VanishingSequence(pub Vec<u32>);

impl VanishingSequence {
    pub fn validate(&self, r: u32, d: u32) -> Result<()> {
        let a = &self.0;
        if a.len() != r as usize + 1 {
            return domain(format!("vanishing sequence {a:?} must have r + 1 = {} entries", r + 1));
        }
        if a.windows(2).any(|w| w[0] >= w[1]) {
            return domain(format!("vanishing sequence {a:?} must be strictly increasing"));
        }
        if a.last().is_some_and(|&x| x > d) {
            return domain(format!("vanishing sequence {a:?} exceeds the degree {d}"));
        }
        Ok(())
    }

    /// Ramification weights α_i = a_i − i.
    pub fn ramification(&self) -> Vec<u32> {
        self.0.iter().enumerate().map(|(i, &a)| a - i as u32).collect()
    }

    pub fn weight(&self) -> u32 {
        self.ramification().iter().sum()
    }
}

/// A g^r_d on a smooth curve of genus g, optionally with its vanishing
/// sequence at one marked point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSeriesData {
    pub g: u32,
    pub r: u32,
    pub d: u32,
    #[serde(default)]
    pub vanishing: Option<VanishingSequence>,
}

impl LinearSeriesData {
    pub fn validate(&self) -> Result<()> {
        if self.r > self.d && self.d > 0 {
            return domain(format!("a g^{}_{} cannot have r > d", self.r, self.d));
        }
        if let Some(v) = &self.vanishing {
            v.validate(self.r, self.d)?;
        }
        Ok(())
    }

    pub fn rho(&self) -> i64 {
        rho(self.g as i64, self.r as i64, self.d as i64)
    }

    /// ρ minus the ramification weight at the marked point.
    pub fn adjusted_rho(&self) -> i64 {
        self.rho() - self.vanishing.as_ref().map_or(0, |v| v.weight() as i64)
    }
}

/// A curve of compact type: smooth components glued along a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCurve {
    pub components: Vec<u32>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeCurve {
    pub fn new(components: Vec<u32>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let t = TreeCurve { components, edges };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.components.len();
        if n == 0 {
            return domain("a tree curve needs at least one component");
        }
        if self.edges.len() != n - 1 {
            return domain(format!("a tree on {n} components has {} edges, got {}", n - 1, self.edges.len()));
        }
        // union-find: n − 1 edges with no cycle form a spanning tree
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return domain(format!("bad edge ({a}, {b})"));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return domain("the dual graph has a cycle");
            }
            parent[ra] = rb;
        }
        Ok(())
    }

    pub fn arithmetic_genus(&self) -> u32 {
        self.components.iter().sum()
    }
}

/// The vanishing sequence of one aspect at one node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeVanishing {
    pub edge: usize,
    pub component: usize,
    pub sequence: VanishingSequence,
}

/// A candidate limit g^r_d: one aspect per component, described by its
/// vanishing sequences at the nodes on that component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitSeries {
    pub r: u32,
    pub d: u32,
    pub vanishing: Vec<NodeVanishing>,
}

/// Checks a^Y_i(p) + a^Z_{r−i}(p) ≥ d at every node p = Y ∩ Z.
pub fn limit_series_compatible(curve: &TreeCurve, series: &LimitSeries) -> Result<bool> {
    curve.validate()?;
    let mut at: BTreeMap<(usize, usize), &VanishingSequence> = BTreeMap::new();
    for nv in &series.vanishing {
        let Some(&(a, b)) = curve.edges.get(nv.edge) else {
            return domain(format!("edge {} does not exist", nv.edge));
        };
        if nv.component != a && nv.component != b {
            return domain(format!("component {} is not on edge {}", nv.component, nv.edge));
        }
        nv.sequence.validate(series.r, series.d)?;
        if at.insert((nv.edge, nv.component), &nv.sequence).is_some() {
            return domain(format!("duplicate vanishing data for edge {} on component {}", nv.edge, nv.component));
        }
    }
    let r = series.r as usize;
    for (e, &(y, z)) in curve.edges.iter().enumerate() {
        let (Some(ay), Some(az)) = (at.get(&(e, y)), at.get(&(e, z))) else {
            return domain(format!("edge {e} needs vanishing data on both components"));
        };
        if (0..=r).any(|i| ay.0[i] + az.0[r - i] < series.d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank and degree of a vector bundle on a curve of genus `genus`, with the
/// standard operations computed on (rank, degree) only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormalBundle {
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub rank: BigInt,
    #[serde(serialize_with = "crate::arith::ser_display")]
    pub degree: BigInt,
    pub genus: u32,
}

impl FormalBundle {
    pub fn new(rank: i64, degree: i64, genus: u32) -> Result<Self> {
        if rank < 1 {
            return domain(format!("bundle rank must be positive, got {rank}"));
        }
        Ok(FormalBundle { rank: rank.into(), degree: degree.into(), genus })
    }

    fn rank_i64(&self) -> Result<i64> {
        self.rank.to_i64().ok_or_else(|| Error::Resource("bundle rank does not fit in 64 bits".into()))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(FormalBundle {
            rank: &self.rank * &other.rank,
            degree: &self.rank * &other.degree + &other.rank * &self.degree,
            genus: self.genus,
        })
    }

    pub fn dual(&self) -> Self {
        FormalBundle { rank: self.rank.clone(), degree: -&self.degree, genus: self.genus }
    }

    /// ∧^k: rank C(r, k), degree C(r−1, k−1)·deg.
    pub fn ext(&self, k: u32) -> Result<Self> {
        let r = self.rank_i64()?;
        let k = k as i64;
        if k > r {
            return domain(format!("exterior power {k} exceeds the rank {r}"));
        }
        Ok(FormalBundle { rank: binom(r, k), degree: binom(r - 1, k - 1) * &self.degree, genus: self.genus })
    }

    /// Sym^k: rank C(r+k−1, k), degree C(r+k−1, r)·deg.
    pub fn sym(&self, k: u32) -> Result<Self> {
        let r = self.rank_i64()?;
        let k = k as i64;
        Ok(FormalBundle { rank: binom(r + k - 1, k), degree: binom(r + k - 1, r) * &self.degree, genus: self.genus })
    }

    /// χ = deg + rank (1 − g), by Riemann-Roch.
    pub fn euler_char(&self) -> BigInt {
        &self.degree + &self.rank * (1 - self.genus as i64)
    }

    pub fn mu(&self) -> Rational {
        Rational::new(self.degree.clone(), self.rank.clone())
    }
}

/// The rank count behind the odd-genus Koszul divisor, g = 2i + 3:
/// (i+1)·C(g+1, i+2) against χ(∧^i M_K ⊗ K²) for the syzygy bundle M_K of
/// rank g − 1 and degree −(2g − 2). Returns both sides.
pub fn balanced_rank_check(i: u32) -> Result<(BigInt, BigInt)> {
    let g = 2 * i + 3;
    let gi = g as i64;
    let lhs = binom(gi + 1, i as i64 + 2) * (i as i64 + 1);
    let mk = FormalBundle::new(gi - 1, -(2 * gi - 2), g)?;
    let k = FormalBundle::new(1, 2 * gi - 2, g)?;
    let k2 = k.tensor(&k)?;
    let rhs = mk.ext(i)?.tensor(&k2)?.euler_char();
    if lhs != rhs {
        return Err(Error::Internal(format!("rank count for i = {i}: {lhs} != {rhs}")));
    }
    Ok((lhs, rhs))
}

/// The closed form (g−1)(3·C(g−1, i) − 2·C(g−2, i−1)) for χ(∧^i M_K ⊗ K²).
pub fn syzygy_euler_closed_form(g: u32, i: u32) -> BigInt {
    let (g, i) = (g as i64, i as i64);
    (BigInt::from(3) * binom(g - 1, i) - BigInt::from(2) * binom(g - 2, i - 1)) * (g - 1)
}

/// C(g−1, i+2)(g − 2i − 3)(i + 1)/(g − i − 1) + 1, for 0 ≤ i ≤ (g−1)/2.
pub fn koszul_threshold(g: u32, i: u32) -> Result<Rational> {
    if g < 1 || 2 * i > g - 1 {
        return domain(format!("koszul_threshold needs 0 <= i <= (g-1)/2, got g = {g}, i = {i}"));
    }
    let (g, i) = (g as i64, i as i64);
    Ok(big(binom(g - 1, i + 2)) * int((g - 2 * i - 3) * (i + 1)) / int(g - i - 1) + Rational::one())
}

/// Expected number of quadrics containing a curve embedded by a g^r_d:
/// C(r+2, 2) − (2d + 1 − g).
pub fn quadric_count(g: i64, r: i64, d: i64) -> i64 {
    binom_i64(r + 2, 2) - (2 * d + 1 - g)
}

/// Numerics of plane models for the Severi variety argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeveriData {
    pub g: u32,
    pub d_min: u32,
    pub delta: i64,
    pub dim_u: i64,
    pub feasible: bool,
}

/// Smallest plane degree d with ρ(g, 2, d) ≥ 0, its node count
/// δ = C(d−1, 2) − g, dim U = 3d + g − 1, and whether dim U ≥ 2δ.
pub fn severi_analyze(g: u32) -> Result<SeveriData> {
    if g < 1 {
        return domain("severi_analyze needs g >= 1");
    }
    let gi = g as i64;
    let d_min = (1..).find(|&d| rho(gi, 2, d) >= 0).expect("ρ grows with d");
    let closed = (2 * gi + 8) / 3;
    if d_min != closed {
        return Err(Error::Internal(format!("d_min = {d_min} but floor((2g+8)/3) = {closed}")));
    }
    let delta = binom_i64(d_min - 1, 2) - gi;
    let dim_u = 3 * d_min + gi - 1;
    Ok(SeveriData { g, d_min: d_min as u32, delta, dim_u, feasible: dim_u >= 2 * delta })
}

/// Result of linking a curve through complete intersections of quadrics
/// and f-ics in P^r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Liaison {
    Linked { f: i64, d_res: i64, g_res: i64, intersections: i64 },
    Infeasible { reason: String },
}

/// Links a curve of genus g and degree d in P^r through a complete
/// intersection of r − 1 hypersurfaces of degree f = (r+2)/(r−2). The union
/// has dualizing sheaf O(k) with k = (r−1)f − r − 1, which fixes the residual
/// degree f^{r−1} − d, the residual genus via 2(g − g') = k(d − d'), and the
/// number of points where the two curves meet.
pub fn liaison_solve(g: i64, d: i64, r: i64) -> Result<Liaison> {
    if r < 3 {
        return domain(format!("liaison needs r >= 3, got {r}"));
    }
    if (r + 2) % (r - 2) != 0 {
        return Ok(Liaison::Infeasible { reason: format!("(r+2)/(r-2) = {}/{} is not an integer", r + 2, r - 2) });
    }
    let f = (r + 2) / (r - 2);
    let total = f.checked_pow((r - 1) as u32).ok_or_else(|| Error::Resource("f^(r-1) overflows".into()))?;
    let d_res = total - d;
    if d_res < 0 {
        return Ok(Liaison::Infeasible { reason: format!("residual degree {d_res} is negative") });
    }
    let k = (r - 1) * f - r - 1;
    let diff = k * (d - d_res);
    if diff % 2 != 0 {
        return Ok(Liaison::Infeasible { reason: "residual genus is not an integer".into() });
    }
    let g_res = g - diff / 2;
    if g_res < 0 {
        return Ok(Liaison::Infeasible { reason: format!("residual genus {g_res} is negative") });
    }
    Ok(Liaison::Linked { f, d_res, g_res, intersections: d * k + 2 - 2 * g })
}

/// Expected dimension (r+1)d' − (r−3)(g'−1) of the Hilbert scheme of curves
/// of degree d' and genus g' in P^r.
pub fn hilbert_dim(d: i64, g: i64, r: i64) -> i64 {
    (r + 1) * d - (r - 3) * (g - 1)
}
