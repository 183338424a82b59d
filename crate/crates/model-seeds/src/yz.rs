//! Finite mutation dynamics of the k = 2 band seed.
//!
//! x_{[i,j]} is the dense principal minor of the periodic tridiagonal-band
//! matrix on rows i..j (read cyclically when j < i). The shift cycle mutates
//! the special vertex and then (2,2), …, (n−1,2); after n−1 cycles every
//! mutable variable met so far should be one of the x_{[i,j]}.

use std::collections::BTreeSet;

use exact_arith::{FromRational, Ring};
use matrix_core::RingMatrix;

use crate::band::build_sigma_band;
use crate::double::det;
use crate::{Coord, LabeledSeed, SeedError};

/// (i, j) with i ≤ j, (i, j) ≠ (1, n), or j < i − 1; n(n−1) of them.
pub fn valid_minor_indices(n: usize) -> Vec<(usize, usize)> {
    let mut out = vec![];
    for i in 1..=n {
        for j in 1..=n {
            if is_valid(n, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn is_valid(n: usize, i: usize, j: usize) -> bool {
    (1..=n).contains(&i) && (1..=n).contains(&j) && ((i <= j && (i, j) != (1, n)) || j + 1 < i)
}

/// x_{[i,j]} for the 3×n band array a: row p of the window is band row
/// rows[p] with a_{1r}, a_{2r}, a_{3r} on columns p−1, p, p+1.
pub fn dense_principal_minor<T: Ring>(n: usize, a: &RingMatrix<T>, i: usize, j: usize) -> Result<T, SeedError> {
    if !is_valid(n, i, j) || a.rows() != 3 || a.cols() != n {
        return Err(SeedError::IndexInvalid(i, j));
    }
    let rows: Vec<usize> = if i <= j { (i..=j).collect() } else { (i..=j + n).collect() };
    let s = rows.len();
    let m = RingMatrix::from_fn(s, s, |p, q| {
        let jj = q as i64 - p as i64 + 2;
        if (1..=3).contains(&jj) {
            a.get(jj as usize, (rows[p - 1] - 1) % n + 1).clone()
        } else {
            T::zero()
        }
    });
    det(&m)
}

/// Vertices mutated in one shift cycle.
pub fn shift_cycle(n: usize) -> Vec<Coord> {
    (1..n).map(|i| Coord::Grid(i, 2)).collect()
}

/// One run of the exploration at one point.
#[derive(Clone, Debug)]
pub struct YzRun<T> {
    pub initial: LabeledSeed<T>,
    /// (cycle, vertex, new value) in mutation order
    pub steps: Vec<(usize, usize, T)>,
    /// seed after each full cycle
    pub after_cycle: Vec<LabeledSeed<T>>,
}

pub fn yz_exploration<T: FromRational>(n: usize, a: &RingMatrix<T>) -> Result<YzRun<T>, SeedError> {
    let initial = build_sigma_band(2, n, a)?;
    let mut cur = initial.clone();
    let mut steps = vec![];
    let mut after_cycle = vec![];
    for cyc in 0..n - 1 {
        for c in shift_cycle(n) {
            let v = cur.id(c);
            cur.seed = cur.seed.mutate(v)?;
            steps.push((cyc, v, cur.seed.values[v].clone()));
        }
        after_cycle.push(cur.clone());
    }
    Ok(YzRun {
        initial,
        steps,
        after_cycle,
    })
}

/// a with its columns rotated: column r of the result is column r + s.
pub fn shift_band<T: Ring>(a: &RingMatrix<T>, s: usize) -> RingMatrix<T> {
    let n = a.cols();
    RingMatrix::from_fn(a.rows(), n, |j, r| a.get(j, (r - 1 + s) % n + 1).clone())
}

/// Outcome of an exploration over one or more points. Values are compared
/// through their tuple over all points, so three F_p runs act as a
/// fingerprint and a single symbolic run compares exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct YzReport {
    pub minor_count: usize,
    /// distinct mutable variables: the initial ones plus every new one
    pub collected: usize,
    /// every x_{[i,j]} met, initial seed included, sorted
    pub recovered: Vec<(usize, usize)>,
    /// (cycle, vertex label, matched (i, j)) per mutation
    pub trace: Vec<(usize, String, Option<(usize, usize)>)>,
    pub unmatched: usize,
    /// for each cycle c, whether the seed equals the initial seed of the
    /// band shifted by c columns, vertices matched by value
    pub cycles_restore: Vec<bool>,
    pub pass: bool,
}

fn key<T: Ring>(runs: &[&LabeledSeed<T>], v: usize) -> Vec<T> {
    runs.iter().map(|s| s.seed.values[v].clone()).collect()
}

/// Vertex map from `a` to `b` pairing equal values (frozen values may also
/// match up to sign), then equality of the quivers under it.
fn seeds_match<T: Ring>(a: &[&LabeledSeed<T>], b: &[&LabeledSeed<T>]) -> bool {
    let qa = &a[0].seed.quiver;
    let qb = &b[0].seed.quiver;
    if qa.len() != qb.len() {
        return false;
    }
    let mut perm = vec![usize::MAX; qa.len()];
    let mut used = vec![false; qb.len()];
    for v in 0..qa.len() {
        let kv = key(a, v);
        let neg: Vec<T> = kv.iter().map(|x| x.neg()).collect();
        let hit = (0..qb.len()).find(|&w| {
            !used[w]
                && qa.is_frozen(v) == qb.is_frozen(w)
                && qa.mult(v) == qb.mult(w)
                && (key(b, w) == kv || (qa.is_frozen(v) && key(b, w) == neg))
        });
        match hit {
            Some(w) => {
                perm[v] = w;
                used[w] = true;
            }
            None => return false,
        }
    }
    qa.relabel(&perm).same_shape(qb)
}

/// Run the exploration at every point in `bands` and compare against the
/// x_{[i,j]}.
pub fn yz_report<T: FromRational>(n: usize, bands: &[RingMatrix<T>]) -> Result<YzReport, SeedError> {
    let runs = bands
        .iter()
        .map(|a| yz_exploration(n, a))
        .collect::<Result<Vec<_>, _>>()?;
    let minors: Vec<((usize, usize), Vec<T>)> = valid_minor_indices(n)
        .into_iter()
        .map(|(i, j)| {
            let k = bands
                .iter()
                .map(|a| dense_principal_minor(n, a, i, j))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(((i, j), k))
        })
        .collect::<Result<_, SeedError>>()?;
    let lookup = |k: &Vec<T>| minors.iter().find(|(_, m)| m == k).map(|(ij, _)| *ij);

    let init: Vec<&LabeledSeed<T>> = runs.iter().map(|r| &r.initial).collect();
    let mut seen: Vec<Vec<T>> = vec![];
    let mut unmatched = 0;
    let mut recovered = BTreeSet::new();
    for v in init[0].mutable_vertices() {
        let k = key(&init, v);
        match lookup(&k) {
            Some(ij) => {
                recovered.insert(ij);
            }
            None => unmatched += 1,
        }
        if !seen.contains(&k) {
            seen.push(k);
        }
    }
    let mut trace = vec![];
    for (s, (cyc, v, _)) in runs[0].steps.iter().enumerate() {
        let k: Vec<T> = runs.iter().map(|r| r.steps[s].2.clone()).collect();
        let hit = lookup(&k);
        match hit {
            Some(ij) => {
                recovered.insert(ij);
            }
            None => unmatched += 1,
        }
        trace.push((*cyc, init[0].seed.quiver.vertex(*v).label.clone(), hit));
        if !seen.contains(&k) {
            seen.push(k);
        }
    }

    let mut cycles_restore = vec![];
    for c in 0..n - 1 {
        let after: Vec<&LabeledSeed<T>> = runs.iter().map(|r| &r.after_cycle[c]).collect();
        let shifted = bands
            .iter()
            .map(|a| build_sigma_band(2, n, &shift_band(a, c + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let sref: Vec<&LabeledSeed<T>> = shifted.iter().collect();
        cycles_restore.push(seeds_match(&after, &sref));
    }
    let collected = seen.len();
    Ok(YzReport {
        minor_count: minors.len(),
        collected,
        recovered: recovered.into_iter().collect(),
        pass: unmatched == 0 && collected == minors.len() && cycles_restore.iter().all(|&b| b),
        trace,
        unmatched,
        cycles_restore,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::symbolic_band;

    #[test]
    fn index_set_size() {
        for n in 3..8 {
            assert_eq!(valid_minor_indices(n).len(), n * (n - 1));
        }
        assert!(!is_valid(4, 1, 4));
        assert!(!is_valid(4, 3, 2));
        assert!(is_valid(4, 4, 2));
    }

    #[test]
    fn one_by_one_minor_is_the_diagonal() {
        let a = symbolic_band(2, 5);
        for i in 1..=5 {
            assert_eq!(&dense_principal_minor(5, &a, i, i).unwrap(), a.get(2, i));
        }
        assert_eq!(dense_principal_minor(5, &a, 1, 5), Err(SeedError::IndexInvalid(1, 5)));
    }
}
