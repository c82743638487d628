//! Smith normal form over `Z/MZ`.
//!
//! For an integer matrix `A` (rows × cols) and a modulus `M`, computes
//! invertible `U`, `V` over `Z/MZ` with `U·A·V ≡ D (mod M)`, `D` diagonal,
//! each diagonal entry a divisor of `M` (or `0`) and `dᵢ | dᵢ₊₁`.
//!
//! Every operation except the final pivot normalization is an integer
//! unimodular operation reduced mod `M`, so when every nonzero integer
//! invariant factor of `A` divides `M` strictly (e.g. `M` is a multiple of
//! their square) the diagonal reproduces the integer Smith form exactly.
//!
//! `U` is typically large and dense for the tall coboundary matrices, so it
//! is kept as the sequence of row operations that produced it and replayed
//! on demand. `V` is small and stored densely.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// An elementary operation on rows (for `U`) or columns (for `V`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementaryOp {
    Swap(u32, u32),
    /// `line[target] += factor · line[source]`
    AddMul {
        target: u32,
        source: u32,
        factor: u64,
    },
    /// `line[line] *= unit`, `unit` invertible mod `M`.
    Scale {
        line: u32,
        unit: u64,
    },
    /// `(line[i], line[j]) ← (a·line[i] + b·line[j], c·line[i] + d·line[j])` with `ad − bc = 1`.
    Mix {
        i: u32,
        j: u32,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
    },
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
fn neg(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

impl ElementaryOp {
    /// Applies the operation to a vector indexed by lines.
    pub fn apply(&self, v: &mut [u64], m: u64) {
        match *self {
            ElementaryOp::Swap(i, j) => v.swap(i as usize, j as usize),
            ElementaryOp::AddMul { target, source, factor } => {
                let s = v[source as usize];
                let t = &mut v[target as usize];
                *t = addmod(*t, mulmod(factor, s, m), m);
            }
            ElementaryOp::Scale { line, unit } => {
                let x = &mut v[line as usize];
                *x = mulmod(*x, unit, m);
            }
            ElementaryOp::Mix { i, j, a, b, c, d } => {
                let (x, y) = (v[i as usize], v[j as usize]);
                v[i as usize] = addmod(mulmod(a, x, m), mulmod(b, y, m), m);
                v[j as usize] = addmod(mulmod(c, x, m), mulmod(d, y, m), m);
            }
        }
    }

    /// The inverse operation.
    pub fn inverse(&self, m: u64) -> ElementaryOp {
        match *self {
            ElementaryOp::Swap(i, j) => ElementaryOp::Swap(i, j),
            ElementaryOp::AddMul { target, source, factor } => ElementaryOp::AddMul {
                target,
                source,
                factor: neg(factor, m),
            },
            ElementaryOp::Scale { line, unit } => ElementaryOp::Scale {
                line,
                unit: inverse_mod(unit, m).expect("scaling by a unit"),
            },
            ElementaryOp::Mix { i, j, a, b, c, d } => ElementaryOp::Mix {
                i,
                j,
                a: d,
                b: neg(b, m),
                c: neg(c, m),
                d: a,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Snf {
    modulus: u64,
    rows: usize,
    cols: usize,
    diagonal: Vec<u64>,
    left_ops: Vec<ElementaryOp>,
    right_ops: Vec<ElementaryOp>,
    /// `V`, row-major cols × cols.
    right: Vec<u64>,
}

struct Work {
    m: u64,
    rows: usize,
    cols: usize,
    a: Vec<u64>,
    left_ops: Vec<ElementaryOp>,
    right_ops: Vec<ElementaryOp>,
    v: Vec<u64>,
}

impl Work {
    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    fn row_op(&mut self, op: ElementaryOp, from_col: usize) {
        let (m, c) = (self.m, self.cols);
        match op {
            ElementaryOp::Swap(i, j) => {
                for k in from_col..c {
                    self.a.swap(i as usize * c + k, j as usize * c + k);
                }
            }
            ElementaryOp::AddMul { target, source, factor } => {
                let (t, s) = (target as usize * c, source as usize * c);
                for k in from_col..c {
                    let x = self.a[s + k];
                    if x != 0 {
                        self.a[t + k] = addmod(self.a[t + k], mulmod(factor, x, m), m);
                    }
                }
            }
            ElementaryOp::Scale { line, unit } => {
                let r = line as usize * c;
                for k in from_col..c {
                    self.a[r + k] = mulmod(self.a[r + k], unit, m);
                }
            }
            ElementaryOp::Mix { i, j, a, b, c: cc, d } => {
                let (ri, rj) = (i as usize * c, j as usize * c);
                for k in from_col..c {
                    let (x, y) = (self.a[ri + k], self.a[rj + k]);
                    if x == 0 && y == 0 {
                        continue;
                    }
                    self.a[ri + k] = addmod(mulmod(a, x, m), mulmod(b, y, m), m);
                    self.a[rj + k] = addmod(mulmod(cc, x, m), mulmod(d, y, m), m);
                }
            }
        }
        self.left_ops.push(op);
    }

    fn col_op(&mut self, op: ElementaryOp, from_row: usize) {
        let m = self.m;
        let apply_cols = |data: &mut [u64], width: usize, nrows: std::ops::Range<usize>| {
            for r in nrows {
                let row = &mut data[r * width..(r + 1) * width];
                op.apply(row, m);
            }
        };
        apply_cols(&mut self.a, self.cols, from_row..self.rows);
        apply_cols(&mut self.v, self.cols, 0..self.cols);
        self.right_ops.push(op);
    }

    /// Zeroes `a[i][k]` against the pivot `a[k][k]`.
    fn clear_below(&mut self, k: usize, i: usize) {
        let p = self.at(k, k);
        let q = self.at(i, k);
        if q.is_multiple_of(p) {
            let factor = neg((q / p) % self.m, self.m);
            self.row_op(
                ElementaryOp::AddMul {
                    target: i as u32,
                    source: k as u32,
                    factor,
                },
                k,
            );
        } else {
            let (s, t, g) = bezout(p, q);
            let m = self.m as i128;
            let red = |x: i128| x.rem_euclid(m) as u64;
            self.row_op(
                ElementaryOp::Mix {
                    i: k as u32,
                    j: i as u32,
                    a: red(s),
                    b: red(t),
                    c: red(-(q as i128 / g)),
                    d: red(p as i128 / g),
                },
                k,
            );
        }
        debug_assert_eq!(self.at(i, k), 0);
    }

    /// Zeroes `a[k][j]` against the pivot `a[k][k]`.
    fn clear_right(&mut self, k: usize, j: usize) {
        let p = self.at(k, k);
        let q = self.at(k, j);
        if q.is_multiple_of(p) {
            let factor = neg((q / p) % self.m, self.m);
            self.col_op(
                ElementaryOp::AddMul {
                    target: j as u32,
                    source: k as u32,
                    factor,
                },
                k,
            );
        } else {
            let (s, t, g) = bezout(p, q);
            let m = self.m as i128;
            let red = |x: i128| x.rem_euclid(m) as u64;
            self.col_op(
                ElementaryOp::Mix {
                    i: k as u32,
                    j: j as u32,
                    a: red(s),
                    b: red(t),
                    c: red(-(q as i128 / g)),
                    d: red(p as i128 / g),
                },
                k,
            );
        }
        debug_assert_eq!(self.at(k, j), 0);
    }

    /// Entry of `a[k.., k..]` with the smallest ideal (gcd with `M`).
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let x = self.at(i, j);
                if x == 0 {
                    continue;
                }
                let g = x.gcd(&self.m);
                if best.is_none_or(|(bg, _, _)| g < bg) {
                    best = Some((g, i, j));
                    if g == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// `(s, t, g)` with `s·p + t·q = g = gcd(p, q)`.
fn bezout(p: u64, q: u64) -> (i128, i128, i128) {
    let e = (p as i128).extended_gcd(&(q as i128));
    (e.x, e.y, e.gcd)
}

impl Snf {
    /// Factors the `rows × cols` integer matrix given by `entry(i, j)` modulo `modulus`.
    pub fn compute(rows: usize, cols: usize, modulus: u64, entry: impl Fn(usize, usize) -> i64) -> Snf {
        assert!(modulus >= 1, "modulus must be positive");
        let m = modulus;
        let mut a = vec![0u64; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                a[i * cols + j] = (entry(i, j) as i128).rem_euclid(m as i128) as u64;
            }
        }
        let mut v = vec![0u64; cols * cols];
        for j in 0..cols {
            v[j * cols + j] = 1 % m;
        }
        let mut w = Work {
            m,
            rows,
            cols,
            a,
            left_ops: Vec::new(),
            right_ops: Vec::new(),
            v,
        };

        let mut diagonal = Vec::with_capacity(rows.min(cols));
        for k in 0..rows.min(cols) {
            let Some((pi, pj)) = w.find_pivot(k) else {
                break;
            };
            if pi != k {
                w.row_op(ElementaryOp::Swap(k as u32, pi as u32), k);
            }
            if pj != k {
                w.col_op(ElementaryOp::Swap(k as u32, pj as u32), k);
            }
            loop {
                for i in k + 1..rows {
                    if w.at(i, k) != 0 {
                        w.clear_below(k, i);
                    }
                }
                let mut dirty = false;
                for j in k + 1..cols {
                    if w.at(k, j) != 0 {
                        w.clear_right(k, j);
                        dirty = true;
                    }
                }
                if dirty && (k + 1..rows).any(|i| w.at(i, k) != 0) {
                    continue;
                }
                let g = w.at(k, k).gcd(&m);
                let offender = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !w.at(i, j).is_multiple_of(g)));
                match offender {
                    Some(i) => w.row_op(
                        ElementaryOp::AddMul {
                            target: k as u32,
                            source: i as u32,
                            factor: 1,
                        },
                        k,
                    ),
                    None => break,
                }
            }
            let p = w.at(k, k);
            let g = p.gcd(&m);
            if p != g {
                let unit = normalizing_unit(p, m);
                w.row_op(ElementaryOp::Scale { line: k as u32, unit }, k);
            }
            debug_assert_eq!(w.at(k, k), g);
            diagonal.push(g);
        }
        diagonal.resize(rows.min(cols), 0);

        Snf {
            modulus,
            rows,
            cols,
            diagonal,
            left_ops: w.left_ops,
            right_ops: w.right_ops,
            right: w.v,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Diagonal of `D`; `0` marks a vanishing invariant factor.
    pub fn diagonal(&self) -> &[u64] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }

    pub fn left_op_count(&self) -> usize {
        self.left_ops.len()
    }

    /// `v ← U·v` for a vector of length `rows`.
    pub fn apply_left(&self, v: &mut [u64]) {
        assert_eq!(v.len(), self.rows);
        for op in &self.left_ops {
            op.apply(v, self.modulus);
        }
    }

    /// `v ← U⁻¹·v`.
    pub fn apply_left_inverse(&self, v: &mut [u64]) {
        assert_eq!(v.len(), self.rows);
        for op in self.left_ops.iter().rev() {
            op.inverse(self.modulus).apply(v, self.modulus);
        }
    }

    /// `V·y` for a vector of length `cols`.
    pub fn apply_right(&self, y: &[u64]) -> Vec<u64> {
        let (c, m) = (self.cols, self.modulus);
        (0..c)
            .map(|i| (0..c).fold(0u64, |acc, j| addmod(acc, mulmod(self.right[i * c + j], y[j], m), m)))
            .collect()
    }

    fn materialize(&self, n: usize, apply: impl Fn(&mut [u64])) -> Vec<Vec<u64>> {
        // column-by-column image of the identity, then transpose
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0u64; n];
            e[j] = 1 % self.modulus;
            apply(&mut e);
            cols.push(e);
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }

    pub fn left_matrix(&self) -> Vec<Vec<u64>> {
        self.materialize(self.rows, |v| self.apply_left(v))
    }

    pub fn left_inverse_matrix(&self) -> Vec<Vec<u64>> {
        self.materialize(self.rows, |v| self.apply_left_inverse(v))
    }

    pub fn right_matrix(&self) -> Vec<Vec<u64>> {
        self.right
            .chunks(self.cols.max(1))
            .take(self.cols)
            .map(|r| r.to_vec())
            .collect()
    }

    /// `V⁻¹`, rebuilt from the recorded column operations.
    pub fn right_inverse_matrix(&self) -> Vec<Vec<u64>> {
        // A column operation multiplies on the right by the transpose of the
        // matching row operation R, so V = (R_n⋯R_1)ᵀ and V⁻¹ = (R_1⁻¹⋯R_n⁻¹)ᵀ.
        let m = self.modulus;
        let w = self.materialize(self.cols, |v| {
            for op in self.right_ops.iter().rev() {
                op.inverse(m).apply(v, m);
            }
        });
        let n = self.cols;
        (0..n).map(|i| (0..n).map(|j| w[j][i]).collect()).collect()
    }

    /// Solves `A·x ≡ b (mod M)`. On failure returns the first row of `U·b`
    /// that obstructs a solution.
    pub fn solve(&self, b: &[u64]) -> Result<Vec<u64>, usize> {
        let m = self.modulus;
        let mut ub: Vec<u64> = b.iter().map(|&x| x % m).collect();
        self.apply_left(&mut ub);
        let mut y = vec![0u64; self.cols];
        for (i, &c) in ub.iter().enumerate() {
            let d = self.diagonal.get(i).copied().unwrap_or(0);
            if d == 0 {
                if c != 0 {
                    return Err(i);
                }
            } else if c % d != 0 {
                return Err(i);
            } else if i < self.cols {
                y[i] = c / d;
            }
        }
        Ok(self.apply_right(&y))
    }
}

/// A unit `u` mod `m` with `u·p ≡ gcd(p, m)`.
fn normalizing_unit(p: u64, m: u64) -> u64 {
    let g = p.gcd(&m);
    let m_red = m / g;
    let u0 = if m_red == 1 {
        1
    } else {
        inverse_mod((p / g) % m_red, m_red).expect("coprime after dividing out the gcd")
    };
    // lift u0 from Z/(m/g) to a unit of Z/m
    (0..g)
        .map(|t| u0 + t * m_red)
        .find(|u| u.gcd(&m) == 1)
        .expect("units lift along Z/m -> Z/(m/g)")
        % m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matmul(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
        let inner = b.len();
        a.iter()
            .map(|row| {
                (0..b.first().map_or(0, |r| r.len()))
                    .map(|j| (0..inner).fold(0, |acc, k| addmod(acc, mulmod(row[k], b[k][j], m), m)))
                    .collect()
            })
            .collect()
    }

    fn reduce(a: &[Vec<i64>], m: u64) -> Vec<Vec<u64>> {
        a.iter()
            .map(|r| r.iter().map(|&x| (x as i128).rem_euclid(m as i128) as u64).collect())
            .collect()
    }

    fn check_factorization(a: &[Vec<i64>], m: u64) -> Snf {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let snf = Snf::compute(rows, cols, m, |i, j| a[i][j]);
        let u = snf.left_matrix();
        let v = snf.right_matrix();
        let uav = matmul(&matmul(&u, &reduce(a, m), m), &v, m);
        for (i, row) in uav.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let expected = if i == j { snf.diagonal()[i] } else { 0 };
                assert_eq!(x, expected % m, "UAV mismatch at ({i},{j})");
            }
        }
        // U and V are invertible; reconstruction U⁻¹ D V⁻¹ = A
        let ui = snf.left_inverse_matrix();
        let vi = snf.right_inverse_matrix();
        let ident = |n: usize| -> Vec<Vec<u64>> {
            (0..n)
                .map(|i| (0..n).map(|j| u64::from(i == j) % m).collect())
                .collect()
        };
        assert_eq!(matmul(&u, &ui, m), ident(rows));
        assert_eq!(matmul(&v, &vi, m), ident(cols));
        let d: Vec<Vec<u64>> = (0..rows)
            .map(|i| (0..cols).map(|j| if i == j { snf.diagonal()[i] } else { 0 }).collect())
            .collect();
        assert_eq!(matmul(&matmul(&ui, &d, m), &vi, m), reduce(a, m));
        // divisibility chain, every entry a divisor of m (or 0)
        for w in snf.diagonal().windows(2) {
            let (x, y) = (w[0], w[1]);
            let ok = if x == 0 { y == 0 } else { y == 0 || y % x == 0 };
            assert!(ok, "chain broken: {:?}", snf.diagonal());
        }
        assert!(snf.diagonal().iter().all(|&d| d == 0 || m.is_multiple_of(d)));
        snf
    }

    #[test]
    fn known_integer_forms() {
        // integer Smith form diag(2, 6, 12)
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(check_factorization(&a, 144).diagonal(), &[2, 6, 12]);
        // modulo 1000 only gcd(dᵢ, 1000) survives
        assert_eq!(check_factorization(&a, 1000).diagonal(), &[2, 2, 4]);

        let b = vec![vec![4, 0], vec![0, 6]];
        assert_eq!(check_factorization(&b, 144).diagonal(), &[2, 12]);
        // modulo 12 the second factor vanishes
        assert_eq!(check_factorization(&b, 12).diagonal(), &[2, 0]);
    }

    #[test]
    fn tall_and_wide_and_empty() {
        let tall = vec![vec![1, 1], vec![1, -1], vec![0, 2], vec![2, 0]];
        assert_eq!(check_factorization(&tall, 64).diagonal(), &[1, 2]);
        let wide = vec![vec![3, 6, 9]];
        assert_eq!(check_factorization(&wide, 27).diagonal(), &[3]);
        let empty: Vec<Vec<i64>> = vec![];
        let snf = Snf::compute(0, 0, 8, |_, _| 0);
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.solve(&[]), Ok(vec![]));
        let zero = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(check_factorization(&zero, 8).diagonal(), &[0, 0]);
        drop(empty);
    }

    #[test]
    fn solving() {
        // 2x ≡ 1 (mod 8) has no solution; 2x ≡ 4 has x = 2
        let snf = Snf::compute(1, 1, 8, |_, _| 2);
        assert_eq!(snf.solve(&[1]), Err(0));
        let x = snf.solve(&[4]).unwrap();
        assert_eq!(mulmod(2, x[0], 8), 4);
        // x + y ≡ 1, x − y ≡ 0 (mod 4) needs 2x ≡ 1: unsolvable
        let snf = Snf::compute(2, 2, 4, |i, j| if i == 1 && j == 1 { -1 } else { 1 });
        assert!(snf.solve(&[1, 0]).is_err());
        assert!(snf.solve(&[2, 0]).is_ok());
    }

    #[test]
    fn normalizing_units() {
        for m in [8u64, 12, 36, 100] {
            for p in 1..m {
                let u = normalizing_unit(p, m);
                assert_eq!(u.gcd(&m), 1);
                assert_eq!(mulmod(u, p, m), p.gcd(&m));
            }
        }
    }

    proptest! {
        #[test]
        fn random_factorizations(
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(-4i64..5, 36),
            m in prop_oneof![Just(8u64), Just(12), Just(36), Just(64), Just(30)],
        ) {
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            let snf = check_factorization(&a, m);
            // solutions found are genuine
            let b: Vec<u64> = (0..rows).map(|i| (seed[30 + i % 6].rem_euclid(m as i64)) as u64).collect();
            if let Ok(x) = snf.solve(&b) {
                for i in 0..rows {
                    let lhs = (0..cols).fold(0u64, |acc, j| {
                        addmod(acc, mulmod((a[i][j] as i128).rem_euclid(m as i128) as u64, x[j], m), m)
                    });
                    prop_assert_eq!(lhs, b[i]);
                }
            }
        }

        #[test]
        fn unsolvable_means_no_solution(
            cols in 1usize..3,
            seed in proptest::collection::vec(-3i64..4, 9),
            b in proptest::collection::vec(0u64..6, 3),
        ) {
            // brute force over (Z/6)^cols
            let m = 6u64;
            let rows = 3;
            let a: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 3 + j]).collect()).collect();
            let snf = Snf::compute(rows, cols, m, |i, j| a[i][j]);
            let total = m.pow(cols as u32);
            let brute = (0..total).any(|mut code| {
                let x: Vec<u64> = (0..cols).map(|_| { let d = code % m; code /= m; d }).collect();
                (0..rows).all(|i| {
                    (0..cols).fold(0u64, |acc, j| addmod(acc, mulmod((a[i][j] as i128).rem_euclid(6) as u64, x[j], m), m)) == b[i]
                })
            });
            prop_assert_eq!(snf.solve(&b).is_ok(), brute);
        }
    }
}
