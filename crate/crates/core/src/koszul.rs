//! Koszul cohomology of graded modules over a symmetric algebra Sym V.
//!
//! K_{i,j} is the homology at Λ^i V ⊗ M_j of
//! Λ^{i+1} V ⊗ M_{j−1} → Λ^i V ⊗ M_j → Λ^{i−1} V ⊗ M_{j+1}.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{JsonRational, Rational};
use crate::error::{Error, Result};
use crate::linalg::{rank, RankMode, SparseMatrix};

/// Sparse image of a basis vector: (index in the next piece, coefficient).
type SparseVec = Vec<(usize, Rational)>;

/// A graded module M_0 ⊕ … ⊕ M_J over Sym V, given by the action of each
/// basis vector of V: `mult[j][v][a]` is v·m_a ∈ M_{j+1} for m_a ∈ M_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    base_dim: usize,
    pieces: Vec<usize>,
    mult: Vec<Vec<Vec<SparseVec>>>,
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    base_dim: usize,
    pieces: Vec<usize>,
    mult: Vec<Vec<Vec<Vec<JsonRational>>>>,
}

impl GradedModule {
    /// Builds a module from dense multiplication tables of shape
    /// (base_dim, dim M_j, dim M_{j+1}) and checks that the action commutes.
    pub fn new(base_dim: usize, pieces: Vec<usize>, mult: Vec<Vec<Vec<Vec<Rational>>>>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Data("a graded module needs at least M_0".into()));
        }
        if mult.len() + 1 != pieces.len() {
            return Err(Error::Data(format!(
                "{} pieces need {} multiplication tables, got {}",
                pieces.len(),
                pieces.len() - 1,
                mult.len()
            )));
        }
        let mut sparse = Vec::with_capacity(mult.len());
        for (j, table) in mult.into_iter().enumerate() {
            if table.len() != base_dim {
                return Err(Error::Data(format!("mult[{j}] must have {base_dim} entries, got {}", table.len())));
            }
            let mut by_v = Vec::with_capacity(base_dim);
            for (v, mat) in table.into_iter().enumerate() {
                if mat.len() != pieces[j] || mat.iter().any(|row| row.len() != pieces[j + 1]) {
                    return Err(Error::Data(format!(
                        "mult[{j}][{v}] must be {} x {}",
                        pieces[j],
                        pieces[j + 1]
                    )));
                }
                by_v.push(
                    mat.into_iter()
                        .map(|row| row.into_iter().enumerate().filter(|(_, q)| !q.is_zero()).collect())
                        .collect(),
                );
            }
            sparse.push(by_v);
        }
        let m = GradedModule { base_dim, pieces, mult: sparse };
        m.check_commutativity()?;
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ModuleJson = serde_json::from_str(text)?;
        let mult = raw
            .mult
            .into_iter()
            .map(|t| t.into_iter().map(|m| m.into_iter().map(|r| r.into_iter().map(|q| q.0).collect()).collect()).collect())
            .collect();
        Self::new(raw.base_dim, raw.pieces, mult)
    }

    pub fn to_json(&self) -> String {
        let mult = (0..self.mult.len())
            .map(|j| {
                (0..self.base_dim)
                    .map(|v| {
                        self.mult[j][v]
                            .iter()
                            .map(|img| {
                                let mut row = vec![JsonRational(Rational::zero()); self.pieces[j + 1]];
                                for (b, q) in img {
                                    row[*b] = JsonRational(q.clone());
                                }
                                row
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string(&ModuleJson { base_dim: self.base_dim, pieces: self.pieces.clone(), mult })
            .expect("module serializes")
    }

    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn pieces(&self) -> &[usize] {
        &self.pieces
    }

    /// Highest degree J present.
    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    /// dim M_j; zero in negative degree, `None` beyond the truncation.
    pub fn piece_dim(&self, j: i64) -> Option<usize> {
        if j < 0 {
            Some(0)
        } else {
            self.pieces.get(j as usize).copied()
        }
    }

    /// v · m for m ∈ M_j given as a sparse vector.
    fn act(&self, j: usize, v: usize, m: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (a, q) in m {
            for (b, c) in &self.mult[j][v][*a] {
                *acc.entry(*b).or_insert_with(Rational::zero) += q * c;
            }
        }
        acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
    }

    fn check_commutativity(&self) -> Result<()> {
        for j in 0..self.mult.len().saturating_sub(1) {
            for a in 0..self.pieces[j] {
                let unit = vec![(a, Rational::one())];
                for v in 0..self.base_dim {
                    let vm = self.act(j, v, &unit);
                    for w in v + 1..self.base_dim {
                        let wm = self.act(j, w, &unit);
                        if self.act(j + 1, w, &vm) != self.act(j + 1, v, &wm) {
                            return Err(Error::Data(format!(
                                "multiplication does not commute: x{v} x{w} m{a} in degree {j}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The same module with the basis of V permuted: new basis vector k is
    /// old basis vector `perm[k]`.
    pub fn permute_base(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.base_dim];
        if perm.len() != self.base_dim || perm.iter().any(|&p| p >= self.base_dim || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Domain("not a permutation of the base".into()));
        }
        let mult = self.mult.iter().map(|t| perm.iter().map(|&p| t[p].clone()).collect()).collect();
        Ok(GradedModule { base_dim: self.base_dim, pieces: self.pieces.clone(), mult })
    }

    /// The semigroup ring spanned by sums of the exponent vectors in
    /// `generators`, truncated at degree `top`. The generators form the
    /// basis of V and M_j has a basis of distinct sums of j generators.
    pub fn semigroup(generators: &[Vec<u32>], top: usize) -> Result<Self> {
        let n = generators.len();
        let width = generators.first().map_or(0, Vec::len);
        if n == 0 || generators.iter().any(|g| g.len() != width) {
            return Err(Error::Domain("semigroup generators must be nonempty vectors of one length".into()));
        }
        let mut levels: Vec<Vec<Vec<u32>>> = vec![vec![vec![0; width]]];
        let mut index: Vec<HashMap<Vec<u32>, usize>> = vec![HashMap::from([(vec![0; width], 0)])];
        for j in 0..top {
            let mut next: Vec<Vec<u32>> = Vec::new();
            let mut idx = HashMap::new();
            for m in &levels[j] {
                for gv in generators {
                    let s: Vec<u32> = m.iter().zip(gv).map(|(a, b)| a + b).collect();
                    if !idx.contains_key(&s) {
                        idx.insert(s.clone(), next.len());
                        next.push(s);
                    }
                }
            }
            levels.push(next);
            index.push(idx);
        }
        let mut mult = Vec::with_capacity(top);
        for j in 0..top {
            let table = generators
                .iter()
                .map(|gv| {
                    levels[j]
                        .iter()
                        .map(|m| {
                            let s: Vec<u32> = m.iter().zip(gv).map(|(a, b)| a + b).collect();
                            vec![(index[j + 1][&s], Rational::one())]
                        })
                        .collect()
                })
                .collect();
            mult.push(table);
        }
        Ok(GradedModule { base_dim: n, pieces: levels.iter().map(Vec::len).collect(), mult })
    }

    /// Sym V itself for dim V = n, up to degree `top`.
    pub fn polynomial_ring(n: usize, top: usize) -> Result<Self> {
        let gens: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|k| (k == i) as u32).collect()).collect();
        Self::semigroup(&gens, top)
    }

    /// Coordinate ring of the rational normal curve of degree `deg` in P^deg.
    pub fn rational_normal_curve(deg: u32, top: usize) -> Result<Self> {
        let gens: Vec<Vec<u32>> = (0..=deg).map(|a| vec![deg - a, a]).collect();
        Self::semigroup(&gens, top)
    }
}

/// All i-element subsets of 0..n in lexicographic order.
fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            if n - k < left {
                break;
            }
            cur.push(k);
            rec(k + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= n {
        rec(0, n, i, &mut Vec::new(), &mut out);
    }
    out
}

fn need(m: &GradedModule, j: i64) -> Result<usize> {
    m.piece_dim(j).ok_or_else(|| {
        Error::Data(format!("the module stops at degree {}, but degree {j} is needed", m.top_degree()))
    })
}

/// Matrix of d_{i,j}: Λ^i V ⊗ M_j → Λ^{i−1} V ⊗ M_{j+1},
/// f_{s_0} ∧ … ∧ f_{s_{i−1}} ⊗ u ↦ Σ_l (−1)^l (… omit s_l …) ⊗ f_{s_l}·u.
/// Bases are ordered by wedge subset (lexicographic), then by module basis;
/// columns index the source.
pub fn koszul_matrix(m: &GradedModule, i: usize, j: i64) -> Result<SparseMatrix> {
    let src_dim = need(m, j)?;
    let src = subsets(m.base_dim, i);
    if i == 0 || src.is_empty() || src_dim == 0 {
        let tgt = if i == 0 { 0 } else { subsets(m.base_dim, i - 1).len() * m.piece_dim(j + 1).unwrap_or(0) };
        return Ok(SparseMatrix::new(tgt, src.len() * src_dim));
    }
    let tgt_dim = need(m, j + 1)?;
    let tgt = subsets(m.base_dim, i - 1);
    let tgt_index: HashMap<&[usize], usize> = tgt.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
    let mut out = SparseMatrix::new(tgt.len() * tgt_dim, src.len() * src_dim);
    let ju = j as usize;
    for (si, s) in src.iter().enumerate() {
        for l in 0..s.len() {
            let mut rest = s.clone();
            let v = rest.remove(l);
            let ti = tgt_index[rest.as_slice()];
            let sign = if l % 2 == 0 { Rational::one() } else { -Rational::one() };
            for a in 0..src_dim {
                for (b, q) in &m.mult[ju][v][a] {
                    out.add(ti * tgt_dim + b, si * src_dim + a, &sign * q);
                }
            }
        }
    }
    Ok(out)
}

/// dim of the cycles ker d_{i,j}.
pub fn cycle_dim(m: &GradedModule, i: usize, j: i64, mode: RankMode) -> Result<usize> {
    let d = koszul_matrix(m, i, j)?;
    Ok(d.ncols() - rank(&d, mode)?)
}

/// dim K_{i,j}(M, V). Checks d ∘ d = 0 before subtracting.
pub fn koszul_cohomology(m: &GradedModule, i: usize, j: i64, mode: RankMode) -> Result<usize> {
    let out = koszul_matrix(m, i, j)?;
    let inc = koszul_matrix(m, i + 1, j - 1)?;
    if out.nrows() > 0 && inc.ncols() > 0 && !out.mul(&inc)?.is_zero() {
        return Err(Error::Data(format!("d_{{{i},{j}}} ∘ d_{{{},{}}} is not zero", i + 1, j - 1)));
    }
    let kernel = out.ncols() - rank(&out, mode)?;
    let image = rank(&inc, mode)?;
    Ok(kernel - image)
}

/// `table[j][i] = dim K_{i,j}` for 0 ≤ i ≤ max_i, 0 ≤ j ≤ max_j.
pub fn betti_table(m: &GradedModule, max_i: usize, max_j: usize, mode: RankMode) -> Result<Vec<Vec<usize>>> {
    (0..=max_j)
        .map(|j| (0..=max_i).map(|i| koszul_cohomology(m, i, j as i64, mode)).collect())
        .collect()
}

/// Property N_p: K_{i,2} = 0 for 0 ≤ i ≤ p.
#[allow(non_snake_case)]
pub fn green_lazarsfeld_Np(m: &GradedModule, p: usize, mode: RankMode) -> Result<bool> {
    for i in 0..=p {
        if koszul_cohomology(m, i, 2, mode)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
