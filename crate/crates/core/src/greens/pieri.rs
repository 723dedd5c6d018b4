//! Pieri induction for types B and D: adding a horizontal strip of total size
//! `a`, shared between the two halves of a bipartition.

use std::collections::BTreeSet;

use crate::partitions::Partition;
use crate::symbols::Bipartition;

/// All partitions `γ ⊇ γ̃` with `|γ/γ̃| = size` and at most one new box in
/// each column, i.e. `γ̃ᵗ_j ≤ γᵗ_j ≤ γ̃ᵗ_j + 1`.
pub fn horizontal_strips(base: &Partition, size: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut parts: Vec<u32> = base.parts().to_vec();
    parts.push(0);
    extend(&mut parts, 0, size, &mut out, base);
    out
}

fn extend(parts: &mut Vec<u32>, row: usize, left: u32, out: &mut Vec<Partition>, base: &Partition) {
    if row == parts.len() {
        if left == 0 {
            out.push(Partition::from_unsorted(parts.iter().copied()));
        }
        return;
    }
    let orig = base.get(row);
    // Row `row` may grow up to the original length of the row above.
    let cap = if row == 0 { orig + left } else { base.get(row - 1) };
    for grow in 0..=left.min(cap - orig) {
        parts[row] = orig + grow;
        extend(parts, row + 1, left - grow, out, base);
    }
    parts[row] = orig;
}

/// Every `(γ, δ)` obtained from some member of `base` by adding horizontal
/// strips to both halves with total size `a`.
pub fn pieri_induce(base: &BTreeSet<Bipartition>, a: u32) -> BTreeSet<Bipartition> {
    let mut out = BTreeSet::new();
    for b in base {
        for ga in 0..=a {
            let gs = horizontal_strips(&b.alpha, ga);
            let ds = horizontal_strips(&b.beta, a - ga);
            for g in &gs {
                for d in &ds {
                    out.insert(Bipartition::new(g.clone(), d.clone()));
                }
            }
        }
    }
    out
}
