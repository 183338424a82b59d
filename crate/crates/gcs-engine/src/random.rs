use exact_arith::{random_fp, Fp, Ring};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::{ExtendedSeed, GQuiver, Monomial};

/// Random quiver without 2-cycles (frozen pairs aside): `size` vertices,
/// roughly a third frozen, multiplicities up to `max_mult`, edge counts up
/// to `max_edges`, some isolated frozen vertices.
pub fn random_quiver(size: usize, max_mult: u32, max_edges: u32, rng: &mut ChaCha8Rng) -> GQuiver {
    let mut q = GQuiver::new();
    let mut isolated = vec![];
    for i in 0..size {
        let frozen = i > 0 && rng.gen_bool(0.35);
        let mult = if frozen { 1 } else { rng.gen_range(1..=max_mult) };
        q.add_vertex(format!("v{i}"), frozen, mult);
        if frozen && rng.gen_bool(0.3) {
            isolated.push(i);
        }
    }
    for i in 0..size {
        for j in i + 1..size {
            if isolated.contains(&i) || isolated.contains(&j) || !rng.gen_bool(0.45) {
                continue;
            }
            let c = rng.gen_range(1..=max_edges);
            if rng.gen_bool(0.5) {
                q.add_edges(i, j, c);
            } else {
                q.add_edges(j, i, c);
            }
        }
    }
    q
}

/// Random quiver with random nonzero values over F_p and random strings
/// built from isolated frozen variables (or constants when there are none).
pub fn random_seed(
    size: usize,
    max_mult: u32,
    max_edges: u32,
    rng: &mut ChaCha8Rng,
) -> ExtendedSeed<Fp> {
    let q = random_quiver(size, max_mult, max_edges, rng);
    let values = (0..size)
        .map(|_| loop {
            let v = random_fp(rng);
            if !v.is_zero() {
                break v;
            }
        })
        .collect();
    let mut s = ExtendedSeed::new(q, values).unwrap();
    let frozen: Vec<usize> = (0..size).filter(|&i| s.quiver.is_frozen(i)).collect();
    for k in s.quiver.special() {
        let d = s.quiver.mult(k) as usize;
        let mut st = vec![Monomial::one(); d + 1];
        for p in st.iter_mut().take(d).skip(1) {
            *p = if frozen.is_empty() {
                Monomial {
                    coeff: rng.gen_range(1..4),
                    exps: Default::default(),
                }
            } else {
                Monomial::var(frozen[rng.gen_range(0..frozen.len())])
            };
        }
        s.set_string(k, st).unwrap();
    }
    s
}
