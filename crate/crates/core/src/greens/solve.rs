//! The fake-degree matrix `Ω̃` and the blockwise solve of `P̃ Λ̃ P̃ᵗ = Ω̃`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::chartable::{CharLabel, CharTable};
use super::poly::{determinant, Poly, PolyMatrix};
use super::GreensError;
use crate::orbits::{MarkedPartition, Sign};
use crate::partitions::Partition;
use crate::symbols::{gsc_forward, gsc_inverse, Bipartition, FamilyKey, WeylType};

/// `Ω̃` restricted to the characters `rows` of `table`:
/// `ω̃_{ij} = |W|⁻¹ Σ_w χ_i(w) χ_j(w) ∏(1 − t^{d_k}) / det(1 − t·w)`, the
/// graded multiplicity of `χ_i ⊗ χ_j` in the coinvariant algebra.
pub fn omega_for_table(table: &CharTable, rows: &[usize]) -> Result<PolyMatrix, GreensError> {
    let n = table.rank as usize;
    // For D the B product is used termwise and the extra factor 1 + t^n is
    // divided out at the end, keeping every term in ℤ[t].
    let outer = match table.weyl {
        WeylType::D if n > 0 => {
            (1..=n).fold(Poly::one(), |acc, i| &acc * &Poly::one_minus(2 * i))
        }
        _ => table.degree_product(),
    };
    let factors: Vec<Poly> = (0..table.classes.len())
        .map(|c| outer.div_exact(&table.char_poly(c)).expect("characteristic polynomial divides the degree product"))
        .collect();
    let order = BigInt::from(table.order());
    let mut m = PolyMatrix::zeros(rows.len());
    for (i, &a) in rows.iter().enumerate() {
        for (j, &b) in rows.iter().enumerate().skip(i) {
            let mut s = Poly::zero();
            for (c, f) in factors.iter().enumerate() {
                let w = table.values[a][c] * table.values[b][c];
                if w != 0 {
                    s = &s + &f.scale(&(BigInt::from(w) * BigInt::from(table.class_sizes[c])));
                }
            }
            let mut s = s
                .div_scalar_exact(&order)
                .ok_or_else(|| GreensError::NoSolution("fake-degree sum is not divisible by |W|".into()))?;
            if table.weyl == WeylType::D && n > 0 {
                s = s
                    .div_exact(&Poly::one_plus(n))
                    .ok_or_else(|| GreensError::NoSolution("fake-degree sum is not divisible by 1 + t^n".into()))?;
            }
            m.set(j, i, s.clone());
            m.set(i, j, s);
        }
    }
    Ok(m)
}

fn char_label(key: &FamilyKey, b: &Bipartition) -> CharLabel {
    let half = b.split.map(|i| if i == 1 { Sign::Plus } else { Sign::Minus });
    CharLabel { alpha: b.alpha.clone(), beta: b.beta.clone(), half: if key.is_unordered() { half } else { None } }
}

fn family_table(key: &FamilyKey) -> Result<CharTable, GreensError> {
    CharTable::new(key.weyl_type(), key.rank())
}

/// `Ω̃` for a family, rows in the order of [`FamilyKey::members`].
pub fn omega_matrix(key: &FamilyKey) -> Result<PolyMatrix, GreensError> {
    let table = family_table(key)?;
    let rows = member_rows(key, &table)?;
    omega_for_table(&table, &rows)
}

fn member_rows(key: &FamilyKey, table: &CharTable) -> Result<Vec<usize>, GreensError> {
    key.members()
        .iter()
        .map(|b| {
            table.char_index(&char_label(key, b)).ok_or_else(|| GreensError::NoSolution(format!("no character for {b}")))
        })
        .collect()
}

/// Solves `P̃ Λ̃ P̃ᵗ = Ω̃` with `Λ̃` block-diagonal and `P̃` block
/// unitriangular; `blocks` lists index sets in increasing order. Entry
/// `P̃[x][y]` is nonzero only if `x` lies in a later block than `y`.
pub fn lusztig_shoji(omega: &PolyMatrix, blocks: &[Vec<usize>]) -> Result<(PolyMatrix, PolyMatrix), GreensError> {
    let n = omega.dim();
    let mut p = PolyMatrix::identity(n);
    let mut lam = PolyMatrix::zeros(n);
    // Σ over finished blocks K of P_{xK} Λ_K P_{yK}ᵗ.
    let correction = |p: &PolyMatrix, lam: &PolyMatrix, done: &[Vec<usize>], x: usize, y: usize| {
        let mut s = Poly::zero();
        for k in done {
            for &u in k {
                let pu = p.get(x, u);
                if pu.is_zero() {
                    continue;
                }
                for &v in k {
                    let (l, pv) = (lam.get(u, v), p.get(y, v));
                    if !l.is_zero() && !pv.is_zero() {
                        s = &s + &(&(pu * l) * pv);
                    }
                }
            }
        }
        s
    };
    for (bi, j) in blocks.iter().enumerate() {
        let done = &blocks[..bi];
        for &x in j {
            for &y in j {
                let v = omega.get(x, y) - &correction(&p, &lam, done, x, y);
                lam.set(x, y, v);
            }
        }
        let lj = lam.select(j, j);
        let det = determinant(&lj);
        if det.is_zero() {
            return Err(GreensError::NoSolution(format!("singular diagonal block {j:?}")));
        }
        let adj = adjugate(&lj);
        for later in &blocks[bi + 1..] {
            for &x in later {
                let r: Vec<Poly> = j.iter().map(|&y| omega.get(x, y) - &correction(&p, &lam, done, x, y)).collect();
                for (c, &y) in j.iter().enumerate() {
                    let num = r.iter().enumerate().fold(Poly::zero(), |acc, (k, rk)| &acc + &(rk * &adj[k][c]));
                    let q = num.div_exact(&det).ok_or_else(|| {
                        GreensError::NoSolution(format!("entry ({x}, {y}) of P is not in Z[t]"))
                    })?;
                    p.set(x, y, q);
                }
            }
        }
    }
    Ok((p, lam))
}

/// `adj(M)` so that `M · adj(M) = det(M)·I`.
fn adjugate(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![Poly::one()]];
    }
    let minor = |r: usize, c: usize| -> Vec<Vec<Poly>> {
        m.iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect()
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = determinant(&minor(j, i));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        -&d
                    }
                })
                .collect()
        })
        .collect()
}

/// The checks a solved family must pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub residual_zero: bool,
    pub unit_diagonal: bool,
    /// `P̃[x][y] = 0` unless `x = y` or the orbit of `y` lies strictly below
    /// that of `x` in the closure order (or they share a block).
    pub triangular: bool,
    pub block_diagonal: bool,
    pub omega_symmetric: bool,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        self.residual_zero && self.unit_diagonal && self.triangular && self.block_diagonal && self.omega_symmetric
    }

    fn check(
        omega: &PolyMatrix,
        p: &PolyMatrix,
        lam: &PolyMatrix,
        block_of: &[usize],
        below: impl Fn(usize, usize) -> bool,
    ) -> Certificate {
        let n = omega.dim();
        let residual_zero = omega.sub(&p.mul(lam).mul(&p.transpose())).is_zero();
        let unit_diagonal = (0..n).all(|i| *p.get(i, i) == Poly::one());
        let triangular = (0..n).all(|x| {
            (0..n).all(|y| x == y || p.get(x, y).is_zero() || (block_of[x] != block_of[y] && below(y, x)))
        });
        let block_diagonal = (0..n).all(|x| (0..n).all(|y| block_of[x] == block_of[y] || lam.get(x, y).is_zero()));
        Certificate { residual_zero, unit_diagonal, triangular, block_diagonal, omega_symmetric: omega.is_symmetric() }
    }
}

/// The solved Green-function matrices of one family.
#[derive(Debug, Clone)]
pub struct FamilySolution {
    pub key: FamilyKey,
    pub labels: Vec<Bipartition>,
    pub orbits: Vec<MarkedPartition>,
    pub table: CharTable,
    /// Character-table row of each label.
    pub rows: Vec<usize>,
    pub omega: PolyMatrix,
    pub p: PolyMatrix,
    pub lambda: PolyMatrix,
    pub blocks: Vec<Vec<usize>>,
    pub certificate: Certificate,
}

impl FamilySolution {
    pub fn index_of(&self, m: &MarkedPartition) -> Option<usize> {
        self.orbits.iter().position(|o| o == m)
    }

    /// Multiplicity of the constituent `x` at the point `y`: `P̃[x][y](1)`.
    pub fn mult(&self, y: usize, x: usize) -> BigInt {
        self.p.get(x, y).at_one()
    }

    /// Constituents at a point with their multiplicities.
    pub fn constituents(&self, y: usize) -> Vec<(usize, BigInt)> {
        (0..self.labels.len()).map(|x| (x, self.mult(y, x))).filter(|(_, m)| !m.is_zero()).collect()
    }
}

/// Groups indices by orbit (partition and degenerate tag), ordered by the
/// partitions in increasing lexicographic order, a linear extension of
/// dominance.
fn orbit_blocks(orbits: &[MarkedPartition]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut keys: Vec<_> = orbits.iter().map(|o| (o.lambda().clone(), o.degenerate())).collect();
    keys.sort();
    keys.dedup();
    let block_of: Vec<usize> = orbits
        .iter()
        .map(|o| keys.binary_search(&(o.lambda().clone(), o.degenerate())).expect("orbit key present"))
        .collect();
    let mut blocks = vec![Vec::new(); keys.len()];
    for (i, &b) in block_of.iter().enumerate() {
        blocks[b].push(i);
    }
    (blocks, block_of)
}

pub fn solve_family(key: &FamilyKey) -> Result<FamilySolution, GreensError> {
    let table = family_table(key)?;
    let labels = key.members();
    let rows = member_rows(key, &table)?;
    let orbits = labels.iter().map(|b| gsc_inverse(key, b)).collect::<Result<Vec<_>, _>>()?;
    let omega = omega_for_table(&table, &rows)?;
    let (blocks, block_of) = orbit_blocks(&orbits);
    let (p, lambda) = lusztig_shoji(&omega, &blocks)?;
    let below = |y: usize, x: usize| orbits[y].orbit_leq(&orbits[x]) && !orbits[x].orbit_leq(&orbits[y]);
    let certificate = Certificate::check(&omega, &p, &lambda, &block_of, below);
    Ok(FamilySolution { key: *key, labels, orbits, table, rows, omega, p, lambda, blocks, certificate })
}

/// `mult(point; constituent)`: `P̃` at `t = 1`, zero across families.
pub fn mult(point: &MarkedPartition, constituent: &MarkedPartition) -> Result<BigInt, GreensError> {
    if point.group() != constituent.group() || point.size() != constituent.size() {
        return Err(GreensError::Mismatch);
    }
    let (k1, _) = gsc_forward(point)?;
    let (k2, _) = gsc_forward(constituent)?;
    if k1 != k2 {
        return Ok(BigInt::zero());
    }
    let sol = solve_family(&k1)?;
    let y = sol.index_of(point).ok_or(GreensError::Mismatch)?;
    let x = sol.index_of(constituent).ok_or(GreensError::Mismatch)?;
    Ok(sol.mult(y, x))
}

/// The type A solve for `GL_n`: rows and columns are partitions of `n` in
/// increasing lexicographic order, one block each.
#[derive(Debug, Clone)]
pub struct TypeASolution {
    pub partitions: Vec<Partition>,
    pub p: PolyMatrix,
    pub lambda: PolyMatrix,
    pub certificate: Certificate,
}

impl TypeASolution {
    /// The partition labelling the unique maximal constituent at `mu`, if
    /// there is one with multiplicity one.
    pub fn max_support(&self, mu: usize) -> Option<&Partition> {
        let n = self.partitions.len();
        let cons: Vec<usize> = (0..n).filter(|&x| !self.p.get(x, mu).is_zero()).collect();
        let top = cons.iter().copied().find(|&x| {
            cons.iter().all(|&z| z == x || self.partitions[z].dominated_by(&self.partitions[x]))
        })?;
        self.p.get(top, mu).at_one().is_one().then(|| &self.partitions[top])
    }
}

pub fn solve_type_a(n: u32) -> Result<TypeASolution, GreensError> {
    let table = CharTable::new(WeylType::A, n)?;
    let mut partitions = Partition::all(n);
    partitions.reverse();
    let rows: Vec<usize> = partitions
        .iter()
        .map(|l| table.chars.iter().position(|c| &c.alpha == l).expect("character for every partition"))
        .collect();
    let omega = omega_for_table(&table, &rows)?;
    let blocks: Vec<Vec<usize>> = (0..rows.len()).map(|i| vec![i]).collect();
    let block_of: Vec<usize> = (0..rows.len()).collect();
    let (p, lambda) = lusztig_shoji(&omega, &blocks)?;
    let below = |y: usize, x: usize| y != x && partitions[y].dominated_by(&partitions[x]);
    let certificate = Certificate::check(&omega, &p, &lambda, &block_of, below);
    Ok(TypeASolution { partitions, p, lambda, certificate })
}
