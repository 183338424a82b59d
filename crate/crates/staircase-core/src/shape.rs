use std::str::FromStr;

use exact_arith::{random_fp, ArithError, Fp, Poly, Rational, Ring};
use matrix_core::{matrix_from_json, matrix_to_json, seg, RingMatrix};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::StaircaseError;

/// (n, a, b, X, Y) with the block shape checked; `k = a - b`.
#[derive(Clone, Debug, PartialEq)]
pub struct StaircaseData<T> {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub x: RingMatrix<T>,
    pub y: RingMatrix<T>,
}

impl<T: Ring> StaircaseData<T> {
    /// Size of the core, (k-1)n + b.
    pub fn core_size(&self) -> usize {
        (self.k - 1) * self.n + self.b
    }

    /// Y_2 = Y_{[k+1,a]}^{[1,b]}, empty when b = 0.
    pub fn y2(&self) -> RingMatrix<T> {
        self.y.submatrix(&seg(self.k + 1, self.a), &seg(1, self.b)).expect("in range")
    }

    /// Ȳ = Y_{[2,n]}^{[2,n]}
    pub fn ybar(&self) -> RingMatrix<T> {
        self.y.submatrix(&seg(2, self.n), &seg(2, self.n)).expect("in range")
    }
}

fn all_zero<T: Ring>(m: &RingMatrix<T>, rows: &[usize], cols: &[usize]) -> bool {
    rows.iter().all(|&i| cols.iter().all(|&j| m.get(i, j).is_zero()))
}

pub fn validate_shape<T: Ring>(
    n: usize,
    a: usize,
    b: usize,
    x: RingMatrix<T>,
    y: RingMatrix<T>,
) -> Result<StaircaseData<T>, StaircaseError> {
    let bad = |s: String| Err(StaircaseError::ShapeViolation(s));
    if x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n {
        return bad(format!("X and Y must be {n}x{n}"));
    }
    if a <= b + 1 {
        return bad(format!("need a > b + 1, got a = {a}, b = {b}"));
    }
    if a > n {
        return bad(format!("need a <= n, got a = {a}, n = {n}"));
    }
    if !all_zero(&x, &seg(1, a), &seg(1, b)) {
        return bad(format!("X_[1,{a}]^[1,{b}] must vanish"));
    }
    if !all_zero(&x, &seg(a + 1, n), &seg(1, n)) {
        return bad(format!("rows {}..{n} of X must vanish", a + 1));
    }
    if !all_zero(&y, &seg(a + 1, n), &seg(1, b)) {
        return bad(format!("Y_[{},{n}]^[1,{b}] must vanish", a + 1));
    }
    Ok(StaircaseData { n, a, b, k: a - b, x, y })
}

/// The core Φ: block row 1 is Y_{[2,n]}; block rows 2..k-1 are
/// [X_{[2,n]} | Y_{[2,n]}] on consecutive block columns; the last block row
/// is X_{[2,a]} followed by Y_{[2,a]}^{[1,b]}.
pub fn build_core<T: Ring>(s: &StaircaseData<T>) -> RingMatrix<T> {
    let (n, a, b, k) = (s.n, s.a, s.b, s.k);
    let size = s.core_size();
    debug_assert_eq!((k - 1) * (n - 1) + (a - 1), size);
    let mut phi = RingMatrix::zeros(size, size);
    let mut r = 0;
    for blk in 0..k {
        let last = blk == k - 1;
        let rows = if last { seg(2, a) } else { seg(2, n) };
        for i in rows {
            r += 1;
            if blk == 0 {
                for j in 1..=n {
                    phi.set(r, j, s.y.get(i, j).clone());
                }
                continue;
            }
            let c0 = (blk - 1) * n;
            for j in 1..=n {
                phi.set(r, c0 + j, s.x.get(i, j).clone());
            }
            let width = if last { b } else { n };
            for j in 1..=width {
                phi.set(r, c0 + n + j, s.y.get(i, j).clone());
            }
        }
    }
    debug_assert_eq!(r, size);
    phi
}

/// Φ with φ_1..φ_{N+1}, φ_{N+1} = 1.
#[derive(Clone, Debug)]
pub struct CoreMinors<T> {
    pub phi_matrix: RingMatrix<T>,
    minors: Vec<T>,
}

impl<T: Ring> CoreMinors<T> {
    /// φ_i, 1-based.
    pub fn phi(&self, i: usize) -> &T {
        &self.minors[i - 1]
    }

    pub fn len(&self) -> usize {
        self.minors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minors.is_empty()
    }
}

/// det M_{[i,m]}^{[i,m]} for i = 1..m, then 1.
pub fn trailing_minors<T: Ring>(m: &RingMatrix<T>) -> Result<Vec<T>, StaircaseError> {
    let size = m.rows();
    let mut out = Vec::with_capacity(size + 1);
    for i in 1..=size {
        let sub = m.submatrix(&seg(i, size), &seg(i, size))?;
        // sparse symbolic matrices expand faster than they eliminate
        let d = if T::IS_FIELD { sub.det()? } else { sub.det_laplace()? };
        out.push(d);
    }
    out.push(T::one());
    Ok(out)
}

pub fn core_minors<T: Ring>(s: &StaircaseData<T>) -> Result<CoreMinors<T>, StaircaseError> {
    let phi_matrix = build_core(s);
    let minors = trailing_minors(&phi_matrix)?;
    Ok(CoreMinors { phi_matrix, minors })
}

/// Random point of the staircase variety over F_p: allowed entries uniform,
/// forced zeros zero.
pub fn random_staircase(
    n: usize,
    a: usize,
    b: usize,
    rng: &mut ChaCha8Rng,
) -> Result<StaircaseData<Fp>, StaircaseError> {
    let x = RingMatrix::from_fn(n, n, |i, j| {
        if i <= a && j > b {
            random_fp(rng)
        } else {
            Fp::zero()
        }
    });
    let y = RingMatrix::from_fn(n, n, |i, j| {
        if i > a && j <= b {
            Fp::zero()
        } else {
            random_fp(rng)
        }
    });
    validate_shape(n, a, b, x, y)
}

/// Variable index of x_ij.
pub fn x_var(n: usize, i: usize, j: usize) -> u32 {
    ((i - 1) * n + (j - 1)) as u32
}

/// Variable index of y_ij.
pub fn y_var(n: usize, i: usize, j: usize) -> u32 {
    (n * n + (i - 1) * n + (j - 1)) as u32
}

/// Generic instance: one indeterminate per entry the shape allows.
pub fn symbolic_staircase(
    n: usize,
    a: usize,
    b: usize,
) -> Result<StaircaseData<Poly<Rational>>, StaircaseError> {
    let x = RingMatrix::from_fn(n, n, |i, j| {
        if i <= a && j > b {
            Poly::var(x_var(n, i, j))
        } else {
            Poly::zero()
        }
    });
    let y = RingMatrix::from_fn(n, n, |i, j| {
        if i > a && j <= b {
            Poly::zero()
        } else {
            Poly::var(y_var(n, i, j))
        }
    });
    validate_shape(n, a, b, x, y)
}

/// `{ "n", "a", "b", "X": matrix, "Y": matrix }`
pub fn staircase_to_json<T: Ring>(s: &StaircaseData<T>) -> Value {
    json!({ "n": s.n, "a": s.a, "b": s.b, "X": matrix_to_json(&s.x), "Y": matrix_to_json(&s.y) })
}

pub fn staircase_from_json<T>(v: &Value) -> Result<StaircaseData<T>, StaircaseError>
where
    T: Ring + FromStr<Err = ArithError>,
{
    let field = |name: &str| {
        v[name]
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| StaircaseError::ShapeViolation(format!("missing {name}")))
    };
    let (n, a, b) = (field("n")?, field("a")?, field("b")?);
    let x = matrix_from_json(&v["X"])?;
    let y = matrix_from_json(&v["Y"])?;
    validate_shape(n, a, b, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn shape_boundaries() {
        let z = RingMatrix::<Fp>::zeros(4, 4);
        let i = RingMatrix::<Fp>::identity(4);
        assert!(matches!(
            validate_shape(4, 2, 1, z.clone(), i.clone()),
            Err(StaircaseError::ShapeViolation(_))
        ));
        let s = validate_shape(4, 4, 0, z.clone(), i.clone()).unwrap();
        assert_eq!(s.k, 4);
        let mut x = z.clone();
        x.set(4, 1, Fp::one());
        assert!(validate_shape(4, 3, 0, x, i.clone()).is_err());
        let mut x = z.clone();
        x.set(1, 1, Fp::one());
        assert!(validate_shape(4, 3, 1, x, i).is_err());
    }

    #[test]
    fn core_size_and_last_minor() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, a, b) in [(9, 5, 2), (3, 3, 0), (4, 3, 1), (5, 2, 0), (6, 6, 0)] {
            let s = random_staircase(n, a, b, &mut rng).unwrap();
            let cm = core_minors(&s).unwrap();
            let size = (s.k - 1) * n + b;
            assert_eq!(cm.phi_matrix.rows(), size);
            assert_eq!(cm.len(), size + 1);
            assert_eq!(cm.phi(size + 1), &Fp::one());
        }
    }

    #[test]
    fn k_two_core_is_a_single_y_block() {
        let s = symbolic_staircase(4, 2, 0).unwrap();
        let phi = build_core(&s);
        assert_eq!(phi.rows(), 4);
        let expect = s.y.submatrix(&seg(2, 4), &seg(1, 4)).unwrap();
        assert_eq!(phi.submatrix(&seg(1, 3), &seg(1, 4)).unwrap(), expect);
        assert_eq!(phi.row(4), s.x.row(2));
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_staircase(5, 4, 1, &mut rng).unwrap();
        let back: StaircaseData<Fp> = staircase_from_json(&staircase_to_json(&s)).unwrap();
        assert_eq!(back, s);
    }
}
