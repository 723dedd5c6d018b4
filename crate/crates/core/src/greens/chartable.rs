//! Character tables of the Weyl groups of types A, B and D.
//!
//! Type A uses the Murnaghan–Nakayama rule on beta-numbers. Type B is the
//! wreath product `ℤ/2 ≀ S_n`, with the same rule where a negative cycle
//! removed from the second partition contributes an extra sign. Type D is
//! obtained by restriction from B, splitting the characters with equal halves
//! and the classes of positive even cycles.

use serde::Serialize;

use super::poly::Poly;
use super::GreensError;
use crate::orbits::Sign;
use crate::partitions::Partition;
use crate::symbols::WeylType;

pub const DEFAULT_BOUND_AB: u32 = 6;
pub const DEFAULT_BOUND_D: u32 = 4;

/// A conjugacy class: cycle type of positive cycles, of negative cycles, and
/// for split type-D classes the half it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassLabel {
    pub positive: Partition,
    pub negative: Partition,
    pub half: Option<Sign>,
}

/// An irreducible character: a partition (type A, stored in `alpha`) or a
/// pair; split type-D characters carry the half.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharLabel {
    pub alpha: Partition,
    pub beta: Partition,
    pub half: Option<Sign>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharTable {
    pub weyl: WeylType,
    pub rank: u32,
    pub classes: Vec<ClassLabel>,
    pub class_sizes: Vec<u64>,
    pub chars: Vec<CharLabel>,
    /// `values[i][c]`: character `i` on class `c`.
    pub values: Vec<Vec<i64>>,
    pub sign_index: usize,
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// Centralizer order of a permutation of cycle type `mu`.
fn z_order(mu: &Partition) -> u64 {
    mu.multiplicities().iter().map(|&(r, m)| u64::from(r).pow(m as u32) * factorial(m as u32)).product()
}

/// Beta-numbers of length `len` (at least the number of parts).
fn beta_set(p: &Partition, len: usize) -> Vec<i64> {
    (0..len).map(|i| i64::from(p.get(i)) + (len - 1 - i) as i64).collect()
}

fn from_beta(mut beta: Vec<i64>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    Partition::from_unsorted(beta.iter().enumerate().map(|(i, &b)| (b - (len - 1 - i) as i64) as u32))
}

/// Every way of removing an `r`-rim hook: the remaining partition and the
/// hook's leg length.
fn rim_hooks(p: &Partition, r: u32) -> Vec<(Partition, usize)> {
    let beta = beta_set(p, p.len());
    let r = i64::from(r);
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - r;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut next = beta.clone();
        next[i] = nb;
        out.push((from_beta(next), height));
    }
    out
}

/// `χ^λ(μ)` for the symmetric group.
pub fn chi_symmetric(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    let Some((&r, rest)) = mu.parts().split_first() else {
        return 1;
    };
    let rest = Partition::new(rest.to_vec()).expect("tail of a partition");
    rim_hooks(lambda, r).iter().map(|(q, h)| sign_pow(*h) * chi_symmetric(q, &rest)).sum()
}

fn sign_pow(h: usize) -> i64 {
    if h % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `χ^{(α,β)}(μ, ν)` for the hyperoctahedral group.
pub fn chi_hyperoctahedral(alpha: &Partition, beta: &Partition, pos: &Partition, neg: &Partition) -> i64 {
    if alpha.size() + beta.size() != pos.size() + neg.size() {
        return 0;
    }
    let (r, negative, pos, neg) = match (pos.parts().first(), neg.parts().first()) {
        (None, None) => return 1,
        (Some(&r), _) => (r, false, Partition::new(pos.parts()[1..].to_vec()).unwrap(), neg.clone()),
        (None, Some(&r)) => (r, true, pos.clone(), Partition::new(neg.parts()[1..].to_vec()).unwrap()),
    };
    let mut total = 0;
    for (a, h) in rim_hooks(alpha, r) {
        total += sign_pow(h) * chi_hyperoctahedral(&a, beta, &pos, &neg);
    }
    let twist = if negative { -1 } else { 1 };
    for (b, h) in rim_hooks(beta, r) {
        total += twist * sign_pow(h) * chi_hyperoctahedral(alpha, &b, &pos, &neg);
    }
    total
}

impl CharTable {
    pub fn new(weyl: WeylType, rank: u32) -> Result<CharTable, GreensError> {
        let bound = match weyl {
            WeylType::D => DEFAULT_BOUND_D,
            _ => DEFAULT_BOUND_AB,
        };
        Self::with_bound(weyl, rank, bound)
    }

    pub fn with_bound(weyl: WeylType, rank: u32, bound: u32) -> Result<CharTable, GreensError> {
        if rank > bound {
            return Err(GreensError::RankBound { weyl, rank, bound });
        }
        Ok(match weyl {
            WeylType::A => Self::type_a(rank),
            WeylType::B => Self::type_b(rank),
            WeylType::D => Self::type_d(rank),
        })
    }

    fn type_a(n: u32) -> CharTable {
        let parts = Partition::all(n);
        let e = Partition::empty();
        let classes = parts.iter().map(|mu| ClassLabel { positive: mu.clone(), negative: e.clone(), half: None }).collect();
        let class_sizes = parts.iter().map(|mu| factorial(n) / z_order(mu)).collect();
        let chars: Vec<CharLabel> =
            parts.iter().map(|l| CharLabel { alpha: l.clone(), beta: e.clone(), half: None }).collect();
        let values = parts.iter().map(|l| parts.iter().map(|mu| chi_symmetric(l, mu)).collect()).collect();
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        let sign_index = chars.iter().position(|c| c.alpha == ones).unwrap();
        CharTable { weyl: WeylType::A, rank: n, classes, class_sizes, chars, values, sign_index }
    }

    fn b_class_size(n: u32, pos: &Partition, neg: &Partition) -> u64 {
        let order = (1u64 << n) * factorial(n);
        order / (z_order(pos) * z_order(neg) * (1u64 << (pos.len() + neg.len())))
    }

    fn type_b(n: u32) -> CharTable {
        let pairs = Partition::all_pairs(n);
        let classes: Vec<ClassLabel> =
            pairs.iter().map(|(p, q)| ClassLabel { positive: p.clone(), negative: q.clone(), half: None }).collect();
        let class_sizes = pairs.iter().map(|(p, q)| Self::b_class_size(n, p, q)).collect();
        let chars: Vec<CharLabel> =
            pairs.iter().map(|(a, b)| CharLabel { alpha: a.clone(), beta: b.clone(), half: None }).collect();
        let values = chars
            .iter()
            .map(|c| classes.iter().map(|k| chi_hyperoctahedral(&c.alpha, &c.beta, &k.positive, &k.negative)).collect())
            .collect();
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        let sign_index = chars.iter().position(|c| c.alpha.is_empty() && c.beta == ones).unwrap_or(0);
        CharTable { weyl: WeylType::B, rank: n, classes, class_sizes, chars, values, sign_index }
    }

    fn type_d(n: u32) -> CharTable {
        let mut classes = Vec::new();
        let mut class_sizes = Vec::new();
        for (p, q) in Partition::all_pairs(n) {
            if q.len() % 2 == 1 {
                continue;
            }
            let size = Self::b_class_size(n, &p, &q);
            if n > 0 && q.is_empty() && p.parts().iter().all(|x| x % 2 == 0) {
                for half in [Sign::Plus, Sign::Minus] {
                    classes.push(ClassLabel { positive: p.clone(), negative: q.clone(), half: Some(half) });
                    class_sizes.push(size / 2);
                }
            } else {
                classes.push(ClassLabel { positive: p, negative: q, half: None });
                class_sizes.push(size);
            }
        }
        let mut chars = Vec::new();
        for (a, b) in Partition::all_pairs(n) {
            if a == b && n > 0 {
                for half in [Sign::Plus, Sign::Minus] {
                    chars.push(CharLabel { alpha: a.clone(), beta: b.clone(), half: Some(half) });
                }
            } else if a >= b {
                chars.push(CharLabel { alpha: a, beta: b, half: None });
            }
        }
        let values = chars.iter().map(|c| classes.iter().map(|k| Self::d_value(c, k)).collect()).collect();
        let ones = Partition::new(vec![1; n as usize]).unwrap();
        let sign_index = chars.iter().position(|c| c.alpha == ones && c.beta.is_empty()).unwrap_or(0);
        CharTable { weyl: WeylType::D, rank: n, classes, class_sizes, chars, values, sign_index }
    }

    fn d_value(c: &CharLabel, k: &ClassLabel) -> i64 {
        let r = chi_hyperoctahedral(&c.alpha, &c.beta, &k.positive, &k.negative);
        let Some(ch) = c.half else { return r };
        // Split characters: half the restricted value, corrected on the
        // split classes by ±2^{ℓ(μ)}·χ^α(μ/2)/2.
        let delta = match k.half {
            Some(kh) => {
                let halved = Partition::from_unsorted(k.positive.parts().iter().map(|x| x / 2));
                let d = (1i64 << k.positive.len()) * chi_symmetric(&c.alpha, &halved);
                if ch == kh {
                    d
                } else {
                    -d
                }
            }
            None => 0,
        };
        debug_assert!((r + delta) % 2 == 0);
        (r + delta) / 2
    }

    pub fn order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    pub fn degree(&self, i: usize) -> i64 {
        // The identity is the class with only positive 1-cycles.
        let id = self
            .classes
            .iter()
            .position(|k| k.negative.is_empty() && k.positive.parts().iter().all(|&x| x == 1))
            .expect("identity class");
        self.values[i][id]
    }

    pub fn char_index(&self, label: &CharLabel) -> Option<usize> {
        self.chars.iter().position(|c| c == label)
    }

    /// Index of `sgn ⊗ χ_i`, found by comparing value rows.
    pub fn tensor_sign(&self, i: usize) -> usize {
        let row: Vec<i64> = self.values[i].iter().zip(&self.values[self.sign_index]).map(|(a, b)| a * b).collect();
        self.values.iter().position(|r| *r == row).expect("sign twist of an irreducible is irreducible")
    }

    /// Sum over pairs of characters of `|⟨χ_i, χ_j⟩·|W| − δ_ij·|W||`.
    pub fn orthogonality_residual(&self) -> u128 {
        let order = i128::from(self.order() as i64);
        let mut res = 0u128;
        for (i, a) in self.values.iter().enumerate() {
            for (j, b) in self.values.iter().enumerate() {
                let s: i128 = (0..self.classes.len())
                    .map(|c| i128::from(self.class_sizes[c] as i64) * i128::from(a[c]) * i128::from(b[c]))
                    .sum();
                let expect = if i == j { order } else { 0 };
                res += (s - expect).unsigned_abs();
            }
        }
        res
    }

    /// `det(1 − t·w)` on the reflection representation for a class (type A
    /// uses the permutation representation on `n` letters).
    pub fn char_poly(&self, c: usize) -> Poly {
        let k = &self.classes[c];
        let pos = k.positive.parts().iter().map(|&r| Poly::one_minus(r as usize));
        let neg = k.negative.parts().iter().map(|&r| Poly::one_plus(r as usize));
        pos.chain(neg).fold(Poly::one(), |acc, f| &acc * &f)
    }

    /// `∏ (1 − t^{d_i})` over the degrees of the basic invariants.
    pub fn degree_product(&self) -> Poly {
        let n = self.rank as usize;
        let degs: Vec<usize> = match self.weyl {
            WeylType::A => (1..=n).collect(),
            WeylType::B => (1..=n).map(|i| 2 * i).collect(),
            WeylType::D if n == 0 => Vec::new(),
            WeylType::D => (1..n).map(|i| 2 * i).chain([n]).collect(),
        };
        degs.into_iter().fold(Poly::one(), |acc, d| &acc * &Poly::one_minus(d))
    }
}
