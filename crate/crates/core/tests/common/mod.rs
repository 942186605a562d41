#![allow(dead_code)]

use causal_interface::{FrequencyTable, GeometryKind, RowStochasticTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random canonical table with every cell at least ~0.5% of the mass.
pub fn random_canonical(rng: &mut impl Rng) -> FrequencyTable {
    let cells: [[f64; 2]; 2] = [[0; 2]; 2].map(|row| row.map(|_| rng.gen_range(0.005..1.0)));
    let total: f64 = cells.iter().flatten().sum();
    let table = FrequencyTable::new(cells.map(|row| row.map(|x| x / total))).unwrap();
    table.canonicalize().unwrap().0
}

/// Random canonical table whose curve is a regular arc.
pub fn random_arc(rng: &mut impl Rng) -> (FrequencyTable, RowStochasticTable) {
    loop {
        let p = random_canonical(rng);
        let r = p.row_normalize().unwrap();
        if r.determinant() > 1e-6
            && causal_interface::geometry(&r).unwrap().kind == GeometryKind::RegularArc
        {
            return (p, r);
        }
    }
}

/// Same `R`, different experimental group sizes.
pub fn reweight(r: &RowStochasticTable, rng: &mut impl Rng) -> FrequencyTable {
    r.to_table(rng.gen_range(0.05..0.95))
}

/// AUC of `B` used as a score for class `A`, by counting concordant pairs
/// (plus half the ties) over all positive/negative pairs of cells.
pub fn auc_rank_oracle(p: &FrequencyTable) -> f64 {
    let (mut concordant, mut total) = (0.0, 0.0);
    for pos_b in 0..2 {
        for neg_b in 0..2 {
            let w = p.get(1, pos_b) * p.get(0, neg_b);
            total += w;
            if pos_b > neg_b {
                concordant += w;
            } else if pos_b == neg_b {
                concordant += 0.5 * w;
            }
        }
    }
    concordant / total
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
