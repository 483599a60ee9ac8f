//! Root systems, coroots and Weyl groups over the rationals.
//!
//! Vectors live in the simple-root basis of the ambient space. The invariant
//! inner product identifies the space with its dual, so a root `a` acts on a
//! vector `h` by `pair(a, h)` and the coroot is `2a / pair(a, a)`.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{q, RatMat, RatVec, Q};

pub const MAX_RANK: usize = 4;

/// An element of the Weyl group: its matrix on the ambient space and a reduced word
/// in the simple reflections.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub matrix: RatMat,
    pub word: Vec<usize>,
}

impl PartialEq for WeylElement {
    fn eq(&self, o: &Self) -> bool {
        self.matrix == o.matrix
    }
}
impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement { matrix: RatMat::identity(n), word: vec![] }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == RatMat::identity(self.matrix.rows)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `self ∘ other`. The word is the concatenation and need not be reduced;
    /// use [`RootDatum::canonical`] to recover the reduced form.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(&other.word);
        WeylElement { matrix: &self.matrix * &other.matrix, word }
    }

    pub fn inverse(&self) -> WeylElement {
        let matrix = self.matrix.inverse().expect("Weyl elements are invertible");
        let word = self.word.iter().rev().copied().collect();
        WeylElement { matrix, word }
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
        }
    }
}

/// Exact action of a Weyl element on a vector.
pub fn act(w: &WeylElement, v: &RatVec) -> Result<RatVec> {
    if w.matrix.cols != v.dim() {
        return Err(Error::DimensionError { expected: w.matrix.cols, got: v.dim() });
    }
    Ok(w.matrix.apply(v))
}

#[derive(Debug)]
pub struct RootDatum {
    pub rank: usize,
    /// Positive roots first (by height), followed by their negatives in the same order.
    pub roots: Vec<RatVec>,
    pub coroots: Vec<RatVec>,
    pub simple_roots: Vec<usize>,
    pub gram: RatMat,
    pub label: String,
    simple_reflections: Vec<RatMat>,
    weyl: OnceLock<Vec<WeylElement>>,
}

impl Clone for RootDatum {
    fn clone(&self) -> Self {
        RootDatum {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            simple_roots: self.simple_roots.clone(),
            gram: self.gram.clone(),
            label: self.label.clone(),
            simple_reflections: self.simple_reflections.clone(),
            weyl: OnceLock::new(),
        }
    }
}

fn component_gram(name: &str) -> Option<RatMat> {
    let m = match name {
        "A1" => RatMat::from_ints(&[&[2]]),
        "A2" => RatMat::from_ints(&[&[2, -1], &[-1, 2]]),
        "A3" => RatMat::from_ints(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]),
        // first simple root long
        "B2" => RatMat::from_ints(&[&[4, -2], &[-2, 2]]),
        // first simple root short
        "C2" => RatMat::from_ints(&[&[2, -2], &[-2, 4]]),
        "G2" => RatMat::from_ints(&[&[2, -3], &[-3, 6]]),
        _ => return None,
    };
    Some(m)
}

/// Splits `A1xA2`, `A1×A2` or `A1*A2` into components.
pub fn parse_label(label: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = label
        .split(['x', '×', '*'])
        .map(|s| s.trim().to_uppercase())
        .filter(|s| !s.is_empty())
        .collect();
    if parts.is_empty() {
        return Err(Error::UnsupportedType(label.to_string()));
    }
    let mut rank = 0;
    for p in &parts {
        let g = component_gram(p).ok_or_else(|| Error::UnsupportedType(label.to_string()))?;
        rank += g.rows;
    }
    if rank > MAX_RANK {
        return Err(Error::UnsupportedType(format!("{label} (rank {rank} exceeds {MAX_RANK})")));
    }
    Ok(parts)
}

/// Default invariant inner product for a label: block diagonal, short roots of squared length 2.
pub fn default_gram(label: &str) -> Result<RatMat> {
    let parts = parse_label(label)?;
    let blocks: Vec<RatMat> = parts.iter().map(|p| component_gram(p).expect("validated")).collect();
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let mut g = RatMat::zeros(n, n);
    let mut off = 0;
    for b in &blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                g[(off + i, off + j)] = b[(i, j)].clone();
            }
        }
        off += b.rows;
    }
    Ok(g)
}

pub fn build_root_system(label: &str) -> Result<RootDatum> {
    let gram = default_gram(label)?;
    RootDatum::from_gram(label, gram)
}

impl RootDatum {
    /// Builds the datum for `label` with a caller-supplied inner product in the
    /// simple-root basis. The matrix must be invariant under the simple reflections.
    pub fn with_gram(label: &str, gram: RatMat) -> Result<RootDatum> {
        let default = default_gram(label)?;
        if gram.rows != default.rows || gram.cols != default.cols {
            return Err(Error::DimensionError { expected: default.rows, got: gram.rows });
        }
        let d = Self::from_gram(label, gram)?;
        // the Cartan integers must match the label
        let canonical = Self::from_gram(label, default)?;
        if d.simple_reflections != canonical.simple_reflections {
            return Err(Error::InvalidDatum("gram override is not invariant under the Weyl group".into()));
        }
        Ok(d)
    }

    fn from_gram(label: &str, gram: RatMat) -> Result<RootDatum> {
        let parts = parse_label(label)?;
        let rank = gram.rows;
        if !gram.is_symmetric() {
            return Err(Error::InvalidDatum("gram matrix is not symmetric".into()));
        }
        for k in 1..=rank {
            let mut minor = RatMat::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    minor[(i, j)] = gram[(i, j)].clone();
                }
            }
            if !minor.det().is_positive() {
                return Err(Error::InvalidDatum("gram matrix is not positive definite".into()));
            }
        }
        let pair = |u: &RatVec, v: &RatVec| -> Q {
            let gv = gram.apply(v);
            u.iter().zip(gv.iter()).map(|(a, b)| a * b).sum()
        };
        let simple: Vec<RatVec> = (0..rank).map(|i| RatVec::unit(rank, i)).collect();
        let simple_reflections: Vec<RatMat> = simple
            .iter()
            .map(|a| {
                let aa = pair(a, a);
                let cols: Vec<RatVec> = (0..rank)
                    .map(|j| {
                        let e = RatVec::unit(rank, j);
                        let c = q(2) * pair(&e, a) / &aa;
                        &e - &a.scale(&c)
                    })
                    .collect();
                RatMat::from_cols(&cols, rank)
            })
            .collect();

        // orbit of the simple roots under the simple reflections
        let mut seen: Vec<RatVec> = simple.clone();
        let mut queue: VecDeque<RatVec> = simple.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            for s in &simple_reflections {
                let w = s.apply(&v);
                if !w.iter().all(|x| x.is_integer()) {
                    return Err(Error::InvalidDatum("reflection produced a non-integral root".into()));
                }
                if !seen.contains(&w) {
                    if seen.len() > 400 {
                        return Err(Error::InvalidDatum("root set does not close".into()));
                    }
                    seen.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let height = |v: &RatVec| -> Q { v.iter().sum() };
        let mut positive: Vec<RatVec> = seen
            .into_iter()
            .filter(|v| v.iter().all(|x| !x.is_negative()))
            .collect();
        positive.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| -v));
        let coroots = roots.iter().map(|a| a.scale(&(q(2) / pair(a, a)))).collect();
        let simple_roots = (0..rank)
            .map(|i| roots.iter().position(|r| *r == simple[i]).expect("simple root present"))
            .collect();
        let d = RootDatum {
            rank,
            roots,
            coroots,
            simple_roots,
            gram,
            label: parts.join("x"),
            simple_reflections,
            weyl: OnceLock::new(),
        };
        d.validate()?;
        Ok(d)
    }

    /// Checks the type invariants: integral pairings, `a(a^) = 2`, closure, gram invariance.
    pub fn validate(&self) -> Result<()> {
        for (a, ac) in self.roots.iter().zip(&self.coroots) {
            if self.pair(a, ac) != q(2) {
                return Err(Error::InvalidDatum(format!("root {a} does not pair to 2 with its coroot")));
            }
            for b in &self.roots {
                if !self.pair(b, ac).is_integer() {
                    return Err(Error::InvalidDatum("non-integral Cartan pairing".into()));
                }
            }
        }
        for s in &self.simple_reflections {
            for a in &self.roots {
                if !self.roots.contains(&s.apply(a)) {
                    return Err(Error::InvalidDatum("root set not closed under reflections".into()));
                }
            }
            let g2 = &(&s.transpose() * &self.gram) * s;
            if g2 != self.gram {
                return Err(Error::InvalidDatum("gram is not reflection invariant".into()));
            }
        }
        Ok(())
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    /// Index of `-roots[i]`.
    pub fn negative_of(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    pub fn root_index(&self, v: &RatVec) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    /// Invariant inner product `u^T G v`.
    pub fn pair(&self, u: &RatVec, v: &RatVec) -> Q {
        let gv = self.gram.apply(v);
        u.iter().zip(gv.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn pair_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.rank;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += u[i] * crate::num::q_to_f64(&self.gram[(i, j)]) * v[j];
            }
        }
        s
    }

    pub fn norm2(&self, v: &RatVec) -> Q {
        self.pair(v, v)
    }

    /// Coroot of an arbitrary nonzero vector: `2v / (v, v)`.
    pub fn coroot_of(&self, v: &RatVec) -> RatVec {
        v.scale(&(q(2) / self.norm2(v)))
    }

    /// Reflection in the hyperplane orthogonal to `a`.
    pub fn reflect(&self, a: &RatVec, v: &RatVec) -> RatVec {
        let c = q(2) * self.pair(v, a) / self.norm2(a);
        v - &a.scale(&c)
    }

    pub fn reflection_matrix(&self, a: &RatVec) -> RatMat {
        let cols: Vec<RatVec> = (0..self.rank).map(|j| self.reflect(a, &RatVec::unit(self.rank, j))).collect();
        RatMat::from_cols(&cols, self.rank)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement { matrix: self.simple_reflections[i].clone(), word: vec![i] }
    }

    /// Fundamental coweights: `a_i(w_j) = delta_ij`.
    pub fn fundamental_coweights(&self) -> Vec<RatVec> {
        let inv = self.gram.inverse().expect("gram is nondegenerate");
        (0..self.rank).map(|j| inv.col(j)).collect()
    }

    /// Sum of the fundamental coweights: a regular dominant point.
    pub fn rho_check(&self) -> RatVec {
        self.fundamental_coweights().iter().fold(RatVec::zeros(self.rank), |acc, v| &acc + v)
    }

    pub fn is_dominant(&self, v: &RatVec) -> bool {
        self.simple_roots.iter().all(|&i| !self.pair(&self.roots[i], v).is_negative())
    }

    /// The full Weyl group in breadth-first order, each element with a reduced word.
    pub fn weyl_group(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| {
            let mut out: Vec<WeylElement> = vec![WeylElement::identity(self.rank)];
            let mut index: HashMap<RatMat, usize> = HashMap::new();
            index.insert(out[0].matrix.clone(), 0);
            let mut head = 0;
            while head < out.len() {
                let cur = out[head].clone();
                head += 1;
                for i in 0..self.rank {
                    let next = cur.compose(&self.simple_reflection(i));
                    if !index.contains_key(&next.matrix) {
                        index.insert(next.matrix.clone(), out.len());
                        out.push(next);
                    }
                }
            }
            out
        })
    }

    /// Looks up the group element with the given matrix (reduced word included).
    pub fn canonical(&self, m: &RatMat) -> Option<&WeylElement> {
        self.weyl_group().iter().find(|w| &w.matrix == m)
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl_group().iter().max_by_key(|w| w.length()).expect("nonempty group")
    }

    /// Index of the root `w(roots[i])`.
    pub fn act_on_root(&self, w: &WeylElement, i: usize) -> usize {
        self.root_index(&w.matrix.apply(&self.roots[i])).expect("Weyl group permutes roots")
    }

    /// Known group order from the product of the component orders.
    pub fn expected_weyl_order(&self) -> usize {
        self.label
            .split('x')
            .map(|c| match c {
                "A1" => 2,
                "A2" => 6,
                "A3" => 24,
                "B2" | "C2" => 8,
                "G2" => 12,
                _ => 0,
            })
            .product()
    }

    /// Number of positive roots with `a(v) = 0` and the rest strictly signed.
    pub fn is_regular(&self, v: &RatVec) -> bool {
        self.roots.iter().all(|a| !self.pair(a, v).is_zero())
    }

    pub fn has_unit_gram_scale(&self) -> bool {
        self.roots.iter().map(|a| self.norm2(a)).min() == Some(Q::one() + Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qf;

    #[test]
    fn root_counts() {
        for (label, n, rank) in [("A1", 2, 1), ("A2", 6, 2), ("B2", 8, 2), ("C2", 8, 2), ("G2", 12, 2), ("A3", 12, 3), ("A1xA1", 4, 2)] {
            let d = build_root_system(label).unwrap();
            assert_eq!(d.roots.len(), n, "{label}");
            assert_eq!(d.rank, rank);
            assert!(d.has_unit_gram_scale());
        }
    }

    #[test]
    fn unknown_label_rejected() {
        assert!(matches!(build_root_system("F4"), Err(Error::UnsupportedType(_))));
        assert!(matches!(build_root_system("A3xA2"), Err(Error::UnsupportedType(_))));
        assert!(matches!(build_root_system(""), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn weyl_orders() {
        for (label, n) in [("A1", 2), ("A2", 6), ("G2", 12), ("B2", 8), ("A3", 24), ("A1xA2", 12), ("B2xA1xA1", 32)] {
            let d = build_root_system(label).unwrap();
            assert_eq!(d.weyl_group().len(), n, "{label}");
            assert_eq!(d.expected_weyl_order(), n);
        }
    }

    #[test]
    fn words_are_reduced_and_match_matrices() {
        let d = build_root_system("B2").unwrap();
        for w in d.weyl_group() {
            let rebuilt = w
                .word
                .iter()
                .fold(WeylElement::identity(2), |acc, &i| acc.compose(&d.simple_reflection(i)));
            assert_eq!(rebuilt.matrix, w.matrix);
            // length = number of positive roots sent to negative roots
            let inversions = (0..d.num_positive())
                .filter(|&i| !d.is_positive(d.act_on_root(&w.inverse(), i)))
                .count();
            assert_eq!(inversions, w.length());
        }
        assert_eq!(d.longest_element().length(), 4);
    }

    #[test]
    fn act_examples() {
        let d = build_root_system("A2").unwrap();
        let a = d.roots[d.simple_roots[0]].clone();
        let id = WeylElement::identity(2);
        let v = RatVec(vec![qf(1, 3), qf(-5, 7)]);
        assert_eq!(act(&id, &v).unwrap(), v);
        let s = d.simple_reflection(0);
        assert_eq!(act(&s, &a).unwrap(), -&a);
        // fixed hyperplane: v orthogonal to a
        let fixed = d.fundamental_coweights()[1].clone();
        assert_eq!(act(&s, &fixed).unwrap(), fixed);
        assert!(matches!(act(&s, &RatVec::zeros(3)), Err(Error::DimensionError { .. })));
    }

    #[test]
    fn gram_override() {
        let g = RatMat::from_ints(&[&[4, -2], &[-2, 4]]);
        let d = RootDatum::with_gram("A2", g).unwrap();
        assert_eq!(d.norm2(&d.roots[0]), q(4));
        let bad = RatMat::from_ints(&[&[2, 0], &[0, 2]]);
        assert!(RootDatum::with_gram("A2", bad).is_err());
    }
}
