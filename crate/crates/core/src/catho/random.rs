//! Seeded generators of small finite categories for property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::category::FinCategory;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random partial order on `n` points: each pair `i < j` is related with
/// probability `density`, then closed under transitivity.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> FinCategory {
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
        for cell in &mut row[i + 1..] {
            *cell = rng.random_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    // shuffle labels so that initial objects are not always object 0
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut shuffled = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            shuffled[perm[i]][perm[j]] = le[i][j];
        }
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    FinCategory::from_preorder(&names, &shuffled).expect("transitive by construction")
}

/// Whether a multiplication table with unit `0` is associative.
pub fn is_associative(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]])))
}

/// A random monoid of order `n`, rejection-sampled for associativity.
pub fn random_monoid(rng: &mut impl Rng, n: usize) -> FinCategory {
    assert!(n >= 1);
    loop {
        let mut table = vec![vec![0usize; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = if i == 0 {
                    j
                } else if j == 0 {
                    i
                } else {
                    rng.random_range(0..n)
                };
            }
        }
        if is_associative(&table) {
            return FinCategory::monoid(&table).expect("valid table");
        }
    }
}

/// A random small category: a poset, a monoid, or a product of the two.
/// Stays within 5 objects and 40 arrows.
pub fn random_category(rng: &mut impl Rng) -> FinCategory {
    match rng.random_range(0..3) {
        0 => {
            let n = rng.random_range(1..=4);
            random_poset(rng, n, 0.5)
        }
        1 => {
            let n = rng.random_range(1..=3);
            random_monoid(rng, n)
        }
        _ => {
            let n = rng.random_range(1..=2);
            let p = random_poset(rng, n, 0.7);
            let m = rng.random_range(1..=2);
            let mon = random_monoid(rng, m);
            p.product(&mon).expect("product of valid categories")
        }
    }
}
