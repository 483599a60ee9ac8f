//! Exact rational vectors and matrices.
//!
//! Everything that feeds an identity check runs through [`Q`]; floating point
//! only appears in the numeric contour layer.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Renders `3`, `-1/2`, ... the way reports print rationals.
pub fn q_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else if s.contains('.') || s.contains('e') || s.contains('E') {
        let v: f64 = s.parse().ok()?;
        Q::from_float(v)
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Coordinates of a point of the ambient space in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec(pub Vec<Q>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![Q::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Q::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RatVec(xs.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        RatVec(self.0.iter().map(|x| x * c).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(q_to_f64).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Q> {
        self.0.iter()
    }
}

impl fmt::Debug for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", q_string(x))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for RatVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(q_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        let mut out = Vec::with_capacity(v.len());
        for x in v {
            let parsed = match &x {
                serde_json::Value::String(s) => parse_q(s),
                serde_json::Value::Number(n) => parse_q(&n.to_string()),
                _ => None,
            };
            out.push(parsed.ok_or_else(|| serde::de::Error::custom(format!("not a rational: {x}")))?);
        }
        Ok(RatVec(out))
    }
}

impl Index<usize> for RatVec {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVec {
    fn index_mut(&mut self, i: usize) -> &mut Q {
        &mut self.0[i]
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, o: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", q_string(&self[(r, c)]))?;
            }
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[RatVec]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, RatVec::dim);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..c {
                m[(i, j)] = row[j].clone();
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[RatVec], dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for i in 0..dim {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let vs: Vec<RatVec> = rows.iter().map(|r| RatVec::from_ints(r)).collect();
        Self::from_rows(&vs)
    }

    pub fn row(&self, r: usize) -> RatVec {
        RatVec((0..self.cols).map(|c| self[(r, c)].clone()).collect())
    }

    pub fn col(&self, c: usize) -> RatVec {
        RatVec((0..self.rows).map(|r| self[(r, c)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(c, r)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        debug_assert_eq!(self.cols, v.dim());
        RatVec(
            (0..self.rows)
                .map(|r| (0..self.cols).fold(Q::zero(), |acc, c| acc + &self[(r, c)] * &v[c]))
                .collect(),
        )
    }

    pub fn sub(&self, o: &RatMat) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in 0..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in 0..m.cols {
                        let v = &m[(row, c)] * &f;
                        m[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, deterministic (free-variable order).
    pub fn nullspace(&self) -> Vec<RatVec> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = RatVec::zeros(self.cols);
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                for c in 0..n {
                    m.data.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det *= &piv;
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let f = &m[(r, col)] / &piv;
                    for c in col..n {
                        let v = &m[(col, c)] * &f;
                        m[(r, c)] -= v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Q::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = RatMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Solves `self * x = b`; `None` when inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &RatVec) -> Option<RatVec> {
        let mut aug = RatMat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = RatVec::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl Mul for &RatMat {
    type Output = RatMat;
    fn mul(self, o: &RatMat) -> RatMat {
        assert_eq!(self.cols, o.rows);
        let mut m = RatMat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let v = a * &o[(k, c)];
                    m[(r, c)] += v;
                }
            }
        }
        m
    }
}

/// Rank of a family of vectors of equal dimension.
pub fn rank_of(vs: &[RatVec]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    RatMat::from_rows(vs).rank()
}

/// Greedy maximal independent subfamily, keeping the input order.
pub fn independent_subset(vs: &[RatVec]) -> Vec<RatVec> {
    let mut out: Vec<RatVec> = Vec::new();
    for v in vs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if rank_of(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

/// All k-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign_of(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse_agree() {
        let m = RatMat::from_ints(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), q(4));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMat::identity(3));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = RatMat::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let m = RatMat::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&RatVec::from_ints(&[1, 2])).is_none());
        assert_eq!(m.solve(&RatVec::from_ints(&[2, 2])).unwrap(), RatVec::from_ints(&[2, 0]));
    }

    #[test]
    fn parse_and_print_rationals() {
        assert_eq!(parse_q("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(q_string(&qf(-1, 2)), "-1/2");
        assert_eq!(q_string(&q(7)), "7");
        assert!(parse_q("1/0").is_none());
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
