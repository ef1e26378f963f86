//! Exact linear algebra over `Q` and `Z`: rational kernels and solves,
//! integer kernels by unimodular reduction, Hermite normal form, saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QVec = Vec<BigRational>;
pub type ZVec = Vec<BigInt>;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ZMatrix = Matrix<BigInt>;
pub type QMatrix = Matrix<BigRational>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<T>>) -> Self {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "column count");
            data.extend(r);
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "inner dimension");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

impl ZMatrix {
    pub fn to_q(&self) -> QMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }
}

impl QMatrix {
    /// The integer matrix, if every entry is integral.
    pub fn to_z(&self) -> Option<ZMatrix> {
        self.data
            .iter()
            .all(|x| x.is_integer())
            .then(|| self.map(|x| x.to_integer()))
    }
}

/// Reduced row echelon form over `Q`, returning the pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..a.cols {
        if pr == a.rows {
            break;
        }
        let Some(p) = (pr..a.rows).find(|&r| !a.get(r, c).is_zero()) else { continue };
        if p != pr {
            for k in 0..a.cols {
                a.data.swap(p * a.cols + k, pr * a.cols + k);
            }
        }
        let inv = a.get(pr, c).recip();
        for k in 0..a.cols {
            let v = a.get(pr, k) * &inv;
            a.set(pr, k, v);
        }
        for r in 0..a.rows {
            if r == pr || a.get(r, c).is_zero() {
                continue;
            }
            let f = a.get(r, c).clone();
            for k in 0..a.cols {
                let v = a.get(r, k) - &f * a.get(pr, k);
                a.set(r, k, v);
            }
        }
        pivots.push(c);
        pr += 1;
    }
    (a, pivots)
}

pub fn rank_q(m: &QMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel over `Q`.
pub fn kernel_q(m: &QMatrix) -> Vec<QVec> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b` over `Q`.
pub fn solve_q(m: &QMatrix, b: &[BigRational]) -> Option<QVec> {
    assert_eq!(m.rows, b.len(), "right-hand side length");
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, m.cols, b[r].clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, m.cols).clone();
    }
    Some(x)
}

/// Scale a rational vector to a primitive integer vector.
pub fn primitive(v: &[BigRational]) -> ZVec {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: ZVec = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row reduce integer rows by unimodular operations on the first `width`
/// coordinates. Returns the number of pivot rows, which come first.
fn integer_echelon(rows: &mut [ZVec], width: usize) -> usize {
    let mut pr = 0;
    for c in 0..width {
        if pr == rows.len() {
            break;
        }
        loop {
            let best = (pr..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(pr, best);
            let mut done = true;
            for r in pr + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[pr][c]);
                let (head, tail) = rows.split_at_mut(r);
                axpy(&mut tail[0], &q, &head[pr]);
                if !rows[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !rows[pr][c].is_zero() {
            if rows[pr][c].is_negative() {
                for x in rows[pr].iter_mut() {
                    *x = -x.clone();
                }
            }
            for r in 0..pr {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[pr][c]);
                let (head, tail) = rows.split_at_mut(pr);
                axpy(&mut head[r], &q, &tail[0]);
            }
            pr += 1;
        }
    }
    pr
}

/// Hermite normal form of the lattice spanned by `vectors`, zero rows dropped.
pub fn hnf(vectors: &[ZVec]) -> Vec<ZVec> {
    let Some(width) = vectors.first().map(|v| v.len()) else { return Vec::new() };
    let mut rows = vectors.to_vec();
    let k = integer_echelon(&mut rows, width);
    rows.truncate(k);
    rows
}

/// Basis of `{x ∈ Z^cols : m x = 0}`, which is automatically saturated.
pub fn integer_kernel(m: &ZMatrix) -> Vec<ZVec> {
    let (rows, cols) = (m.rows, m.cols);
    let mut aug: Vec<ZVec> = (0..cols)
        .map(|c| {
            let mut v = m.column(c);
            v.extend((0..cols).map(|k| if k == c { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let k = integer_echelon(&mut aug, rows);
    let kernel: Vec<ZVec> = aug[k..].iter().map(|v| v[rows..].to_vec()).collect();
    hnf(&kernel)
}

/// Basis of `span_Q(vectors) ∩ Z^dim`.
pub fn saturate(vectors: &[ZVec], dim: usize) -> Vec<ZVec> {
    let nonzero: Vec<ZVec> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let span = ZMatrix::from_rows(nonzero.len(), dim, nonzero);
    let perp = integer_kernel(&span);
    let perp_m = ZMatrix::from_rows(perp.len(), dim, perp);
    integer_kernel(&perp_m)
}

/// Saturated integer basis of the rational kernel of `m`.
pub fn saturated_kernel(m: &QMatrix) -> Vec<ZVec> {
    let basis: Vec<ZVec> = kernel_q(m).iter().map(|v| primitive(v)).collect();
    saturate(&basis, m.cols)
}

/// Whether two families span the same lattice.
pub fn same_lattice(a: &[ZVec], b: &[ZVec]) -> bool {
    hnf(a) == hnf(b)
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det_z(m: &ZMatrix) -> BigInt {
    assert_eq!(m.rows, m.cols, "square matrix");
    let n = m.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Integer coordinates of `v` in the basis `basis`, if `v` lies in its lattice.
pub fn lattice_coordinates(basis: &[ZVec], v: &[BigInt]) -> Option<ZVec> {
    if basis.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let dim = v.len();
    let m = ZMatrix::from_rows(basis.len(), dim, basis.to_vec()).transpose().to_q();
    let rhs: QVec = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let x = solve_q(&m, &rhs)?;
    x.iter().all(|c| c.is_integer()).then(|| x.iter().map(|c| c.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_and_saturation() {
        let m = ZMatrix::from_rows(1, 3, vec![z(&[2, 4, 6])]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let sat = saturate(&[z(&[2, 4]), z(&[4, 8])], 2);
        assert_eq!(sat, vec![z(&[1, 2])]);
        let full = saturate(&[z(&[2, 0]), z(&[0, 3])], 2);
        assert!(same_lattice(&full, &[z(&[1, 0]), z(&[0, 1])]));
    }

    #[test]
    fn determinants() {
        let m = ZMatrix::from_rows(3, 3, vec![z(&[0, 2, 1]), z(&[1, 1, 1]), z(&[3, 0, 2])]);
        assert_eq!(det_z(&m), BigInt::from(-1));
        assert_eq!(det_z(&ZMatrix::identity(4)), BigInt::one());
    }

    #[test]
    fn coordinates() {
        let basis = vec![z(&[1, 1, 0]), z(&[0, 1, 1])];
        assert_eq!(lattice_coordinates(&basis, &z(&[2, 5, 3])), Some(z(&[2, 3])));
        assert_eq!(lattice_coordinates(&[z(&[2, 0])], &z(&[1, 0])), None);
    }
}
