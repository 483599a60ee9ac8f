//! Levi subspaces, parabolic chambers, the normalized products `theta_P`,
//! measure-decomposition constants and Weyl coset tables.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{combinations, independent_subset, q_string, rank_of, RatMat, RatVec, Q};
use crate::report::{CheckRecord, VerificationReport};
use crate::rootdatum::{RootDatum, WeylElement};
pub use crate::surd::QuadConst;

/// A Levi subgroup, represented by its split-centre subspace `a_L` and the
/// roots vanishing on it.
#[derive(Clone, Debug)]
pub struct Levi {
    pub basis: Vec<RatVec>,
    pub root_subset: Vec<usize>,
    pub label: String,
    /// Gram-orthogonal projection onto `a_L`.
    pub proj: RatMat,
}

impl PartialEq for Levi {
    fn eq(&self, o: &Self) -> bool {
        self.root_subset == o.root_subset
    }
}
impl Eq for Levi {}
impl Hash for Levi {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.root_subset.hash(h)
    }
}

impl Levi {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn has_root(&self, i: usize) -> bool {
        self.root_subset.binary_search(&i).is_ok()
    }

    /// `other ⊆ self` as groups, i.e. `a_self ⊆ a_other`.
    pub fn contains(&self, other: &Levi) -> bool {
        other.root_subset.iter().all(|i| self.has_root(*i))
    }

    pub fn project(&self, v: &RatVec) -> RatVec {
        self.proj.apply(v)
    }

    pub fn contains_vector(&self, v: &RatVec) -> bool {
        &self.project(v) == v
    }

    pub fn is_minimal(&self) -> bool {
        self.root_subset.is_empty()
    }
}

fn projection(d: &RootDatum, basis: &[RatVec]) -> RatMat {
    let n = d.rank;
    if basis.is_empty() {
        return RatMat::zeros(n, n);
    }
    let b = RatMat::from_cols(basis, n);
    let bt_g = &b.transpose() * &d.gram;
    let inner = (&bt_g * &b).inverse().expect("basis is independent");
    &(&b * &inner) * &bt_g
}

/// Levi generated by a set of roots: all roots in their span.
pub fn levi_from_roots(d: &RootDatum, seed: &[usize]) -> Levi {
    let span: Vec<RatVec> = seed.iter().map(|&i| d.roots[i].clone()).collect();
    let r = rank_of(&span);
    let mut root_subset: Vec<usize> = (0..d.roots.len())
        .filter(|&i| {
            let mut ext = span.clone();
            ext.push(d.roots[i].clone());
            rank_of(&ext) == r
        })
        .collect();
    root_subset.sort_unstable();
    let rows: Vec<RatVec> = root_subset.iter().map(|&i| d.gram.apply(&d.roots[i])).collect();
    let basis = if rows.is_empty() {
        (0..d.rank).map(|i| RatVec::unit(d.rank, i)).collect()
    } else {
        RatMat::from_rows(&rows).nullspace()
    };
    let label = if root_subset.is_empty() {
        "M0".to_string()
    } else if root_subset.len() == d.roots.len() {
        "G".to_string()
    } else {
        let pos: Vec<String> = root_subset
            .iter()
            .filter(|&&i| d.is_positive(i))
            .map(|i| (i + 1).to_string())
            .collect();
        format!("L[{}]", pos.join(","))
    };
    let proj = projection(d, &basis);
    Levi { basis, root_subset, label, proj }
}

pub fn minimal_levi(d: &RootDatum) -> Levi {
    levi_from_roots(d, &[])
}

pub fn full_levi(d: &RootDatum) -> Levi {
    levi_from_roots(d, &d.simple_roots)
}

/// Conjugate `wLw^{-1}`.
pub fn conjugate_levi(d: &RootDatum, w: &WeylElement, l: &Levi) -> Levi {
    let image: Vec<usize> = l.root_subset.iter().map(|&i| d.act_on_root(w, i)).collect();
    levi_from_roots(d, &image)
}

/// All Levis `L` with `lower ⊆ L ⊆ upper`, ordered by decreasing `dim a_L` then label.
pub fn enumerate_levis(d: &RootDatum, lower: Option<&Levi>, upper: Option<&Levi>) -> Vec<Levi> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut all: Vec<Levi> = vec![];
    let mut frontier = vec![minimal_levi(d)];
    seen.insert(vec![]);
    while let Some(l) = frontier.pop() {
        for i in 0..d.num_positive() {
            if l.has_root(i) {
                continue;
            }
            let mut seed = l.root_subset.clone();
            seed.push(i);
            let next = levi_from_roots(d, &seed);
            if seen.insert(next.root_subset.clone()) {
                frontier.push(next);
            }
        }
        all.push(l);
    }
    all.retain(|l| lower.is_none_or(|lo| l.contains(lo)) && upper.is_none_or(|up| up.contains(l)));
    all.sort_by(|a, b| {
        b.dim()
            .cmp(&a.dim())
            .then_with(|| a.root_subset.len().cmp(&b.root_subset.len()))
            .then_with(|| a.root_subset.cmp(&b.root_subset))
    });
    all
}

/// The poset of all Levis containing the minimal one.
#[derive(Clone, Debug)]
pub struct LeviLattice {
    pub levis: Vec<Levi>,
}

impl LeviLattice {
    pub fn new(d: &RootDatum) -> Self {
        LeviLattice { levis: enumerate_levis(d, None, None) }
    }

    pub fn by_label(&self, label: &str) -> Option<&Levi> {
        self.levis.iter().find(|l| l.label == label)
    }

    pub fn index_of(&self, l: &Levi) -> usize {
        self.levis.iter().position(|x| x == l).expect("Levi belongs to the lattice")
    }
}

/// Basis of `a_L^top = a_L ∩ (a_top)^⊥`.
pub fn relative_basis(d: &RootDatum, l: &Levi, top: &Levi) -> Vec<RatVec> {
    if top.dim() == 0 {
        return l.basis.clone();
    }
    let imgs: Vec<RatVec> = l.basis.iter().map(|v| v - &top.project(v)).collect();
    let _ = d;
    independent_subset(&imgs)
}

/// Determinant of the pairing matrix of `vs` (1 for the empty list).
pub fn gram_det(d: &RootDatum, vs: &[RatVec]) -> Q {
    let k = vs.len();
    let mut m = RatMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = d.pair(&vs[i], &vs[j]);
        }
    }
    m.det()
}

/// A parabolic `P ∈ P^S(M)`, represented by its open chamber in `a_M^S`.
#[derive(Clone, Debug)]
pub struct ParabolicChamber {
    pub levi: Levi,
    pub upper: Levi,
    /// Roots of `upper` outside `levi` that are positive on the chamber.
    pub positive_roots: Vec<usize>,
    pub chamber_point: RatVec,
    pub index: usize,
}

impl PartialEq for ParabolicChamber {
    fn eq(&self, o: &Self) -> bool {
        self.levi == o.levi && self.upper == o.upper && self.positive_roots == o.positive_roots
    }
}
impl Eq for ParabolicChamber {}

impl ParabolicChamber {
    pub fn label(&self) -> String {
        format!("P{}({})", self.index, self.levi.label)
    }

    pub fn is_improper(&self) -> bool {
        self.levi == self.upper
    }

    /// `Q ⊆ self` for `Q` with a smaller Levi: every root of `self`'s nilradical is positive for `Q`.
    pub fn contains_chamber(&self, q: &ParabolicChamber) -> bool {
        self.levi.contains(&q.levi) && self.positive_roots.iter().all(|i| q.positive_roots.contains(i))
    }

    pub fn opposite(&self, d: &RootDatum) -> ParabolicChamber {
        let mut positive_roots: Vec<usize> = self.positive_roots.iter().map(|&i| d.negative_of(i)).collect();
        positive_roots.sort_unstable();
        ParabolicChamber {
            levi: self.levi.clone(),
            upper: self.upper.clone(),
            positive_roots,
            chamber_point: -&self.chamber_point,
            index: self.index,
        }
    }
}

/// `P(M)`: chambers of `a_M^G`.
pub fn parabolics(d: &RootDatum, m: &Levi) -> Vec<ParabolicChamber> {
    parabolics_in(d, m, &full_levi(d))
}

/// `P^S(M)`: chambers of `a_M^S` cut out by the roots of `S` outside `M`.
pub fn parabolics_in(d: &RootDatum, m: &Levi, s: &Levi) -> Vec<ParabolicChamber> {
    let cow = d.fundamental_coweights();
    let k = m.dim();
    let outside: Vec<usize> = s.root_subset.iter().copied().filter(|&i| !m.has_root(i)).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = vec![];
    for w in d.weyl_group() {
        let pts: Vec<RatVec> = cow.iter().map(|c| w.matrix.apply(c)).filter(|p| m.contains_vector(p)).collect();
        if pts.len() != k {
            continue;
        }
        let x = pts.iter().fold(RatVec::zeros(d.rank), |acc, p| &acc + p);
        let x = &x - &s.project(&x);
        let positive_roots: Vec<usize> =
            outside.iter().copied().filter(|&i| d.pair(&d.roots[i], &x).is_positive()).collect();
        if seen.insert(positive_roots.clone()) {
            out.push(ParabolicChamber {
                levi: m.clone(),
                upper: s.clone(),
                positive_roots,
                chamber_point: x,
                index: out.len(),
            });
        }
    }
    out
}

/// Index of the chamber of `P^S(M)` containing the generic point `x` of `a_M^S`.
pub fn chamber_of(d: &RootDatum, chambers: &[ParabolicChamber], x: &RatVec) -> Option<usize> {
    chambers.iter().position(|p| {
        p.positive_roots.iter().all(|&i| d.pair(&d.roots[i], x).is_positive())
            && p
                .upper
                .root_subset
                .iter()
                .filter(|&&i| !p.levi.has_root(i) && !p.positive_roots.contains(&i))
                .all(|&i| d.pair(&d.roots[i], x).is_negative())
    })
}

/// A reduced root of `(S, A_M)`: projection of roots of `S` to `a_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRoot {
    pub vector: RatVec,
    pub coroot: RatVec,
    /// Ambient roots whose projection is a positive multiple of `vector`.
    pub sources: Vec<usize>,
}

fn positive_multiple(u: &RatVec, v: &RatVec) -> Option<Q> {
    let i = u.iter().position(|x| !x.is_zero())?;
    let c = &v[i] / &u[i];
    if c.is_positive() && &u.scale(&c) == v {
        Some(c)
    } else {
        None
    }
}

/// Reduced restricted roots of `S` on `a_M^S`, both signs.
pub fn restricted_roots(d: &RootDatum, m: &Levi, s: &Levi) -> Vec<RestrictedRoot> {
    let mut out: Vec<RestrictedRoot> = vec![];
    for &i in &s.root_subset {
        if m.has_root(i) {
            continue;
        }
        let v = m.project(&d.roots[i]);
        let mut placed = false;
        for r in out.iter_mut() {
            if let Some(c) = positive_multiple(&r.vector, &v) {
                if c < Q::from_integer(1.into()) {
                    r.vector = v.clone();
                }
                r.sources.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            out.push(RestrictedRoot { vector: v, coroot: RatVec::zeros(0), sources: vec![i] });
        }
    }
    for r in out.iter_mut() {
        r.coroot = d.coroot_of(&r.vector);
    }
    out
}

/// Positive reduced restricted roots of `P`.
pub fn positive_restricted(d: &RootDatum, p: &ParabolicChamber) -> Vec<RestrictedRoot> {
    restricted_roots(d, &p.levi, &p.upper)
        .into_iter()
        .filter(|r| d.pair(&r.vector, &p.chamber_point).is_positive())
        .collect()
}

/// Whether `v` is a nonnegative combination of the independent vectors `basis`.
pub fn nonneg_coords(basis: &[RatVec], v: &RatVec, dim: usize) -> Option<Vec<Q>> {
    if basis.is_empty() {
        return if v.is_zero() { Some(vec![]) } else { None };
    }
    let a = RatMat::from_cols(basis, dim);
    let x = a.solve(v)?;
    Some(x.0)
}

/// `Δ_P`: simple roots of the positive restricted roots.
pub fn simple_restricted(d: &RootDatum, p: &ParabolicChamber) -> Vec<RestrictedRoot> {
    let pos = positive_restricted(d, p);
    let k = p.levi.dim() - p.upper.dim();
    if k == 0 {
        return vec![];
    }
    for comb in combinations(pos.len(), k) {
        let basis: Vec<RatVec> = comb.iter().map(|&i| pos[i].vector.clone()).collect();
        if rank_of(&basis) != k {
            continue;
        }
        let ok = pos.iter().all(|r| {
            nonneg_coords(&basis, &r.vector, d.rank).is_some_and(|c| c.iter().all(|x| !x.is_negative()))
        });
        if ok {
            return comb.into_iter().map(|i| pos[i].clone()).collect();
        }
    }
    unreachable!("positive restricted roots always admit a simple system")
}

/// `theta_P(λ) = product / lattice_volume`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    /// `∏_{α ∈ Δ_P} λ(α^)`.
    pub product: Q,
    /// `vol(a_M^S / Z Δ_P^)` in the gram measure.
    pub lattice_volume: QuadConst,
}

impl Theta {
    pub fn to_f64(&self) -> f64 {
        crate::num::q_to_f64(&self.product) / self.lattice_volume.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.product.is_zero()
    }
}

pub fn theta(d: &RootDatum, p: &ParabolicChamber, lambda: &RatVec) -> Result<Theta> {
    if lambda.dim() != d.rank {
        return Err(Error::DimensionError { expected: d.rank, got: lambda.dim() });
    }
    let simple = simple_restricted(d, p);
    let product = simple.iter().map(|r| d.pair(lambda, &r.coroot)).product();
    let cor: Vec<RatVec> = simple.iter().map(|r| r.coroot.clone()).collect();
    Ok(Theta { product, lattice_volume: QuadConst::sqrt(gram_det(d, &cor)) })
}

/// `vol(a_M^S / Z Δ_P^) / sqrt(g)` where `g` is the gram determinant of [`relative_basis`].
/// Always rational.
pub fn theta_ratio(d: &RootDatum, p: &ParabolicChamber) -> Q {
    let simple = simple_restricted(d, p);
    let cor: Vec<RatVec> = simple.iter().map(|r| r.coroot.clone()).collect();
    let g = gram_det(d, &relative_basis(d, &p.levi, &p.upper));
    QuadConst::sqrt(gram_det(d, &cor) / g).as_rational().expect("coroot lattice is rational in the basis")
}

/// Wall shared by two chambers of the same `P^S(M)`, if they are adjacent.
pub fn adjacent_wall(d: &RootDatum, p: &ParabolicChamber, p2: &ParabolicChamber) -> Option<RestrictedRoot> {
    let roots = positive_restricted(d, p);
    let flipped: Vec<&RestrictedRoot> =
        roots.iter().filter(|r| !d.pair(&r.vector, &p2.chamber_point).is_positive()).collect();
    if flipped.len() == 1 {
        Some(flipped[0].clone())
    } else {
        None
    }
}

/// Squared measure constant `d_{L1}^{top}(L, S)^2`.
pub fn d_constant_square(d: &RootDatum, l1: &Levi, l: &Levi, s: &Levi, top: &Levi) -> Result<Q> {
    for (small, big, what) in [(l1, l, "L1 ⊆ L"), (l1, s, "L1 ⊆ S"), (l, top, "L ⊆ top"), (s, top, "S ⊆ top")] {
        if !big.contains(small) {
            return Err(Error::NotComparable(format!("{what} fails for {} / {}", small.label, big.label)));
        }
    }
    let a = relative_basis(d, l, top);
    let b = relative_basis(d, s, top);
    let c_dim = l1.dim() - top.dim();
    if a.len() + b.len() != c_dim {
        return Ok(Q::zero());
    }
    let mut ab = a.clone();
    ab.extend(b.iter().cloned());
    if rank_of(&ab) != c_dim {
        return Ok(Q::zero());
    }
    Ok(gram_det(d, &ab) / (gram_det(d, &a) * gram_det(d, &b)))
}

/// `d_{L1}^{top}(L, S)`.
pub fn d_constant_rel(d: &RootDatum, l1: &Levi, l: &Levi, s: &Levi, top: &Levi) -> Result<QuadConst> {
    Ok(QuadConst::sqrt(d_constant_square(d, l1, l, s, top)?))
}

/// `d_{L1}^G(L, S)`.
pub fn d_constant(d: &RootDatum, l1: &Levi, l: &Levi, s: &Levi) -> Result<QuadConst> {
    d_constant_rel(d, l1, l, s, &full_levi(d))
}

/// Exhaustive check of the transitivity identity for the constants `d`.
///
/// For `M1 ⊆ M`, `M1 ⊆ S1 ⊆ G1`:
/// `d_{M1}^G(M, G1) = Σ_{S ⊇ M, S1} d_{M1}^S(M, S1) d_{S1}^G(S, G1)`,
/// with at most one nonzero summand.
pub fn trand_check(d: &RootDatum) -> VerificationReport {
    let levis = LeviLattice::new(d).levis;
    let n = levis.len();
    let g = full_levi(d);
    let gi = levis.iter().position(|l| *l == g).expect("G is in the lattice");
    let mut memo: HashMap<(usize, usize, usize, usize), Q> = HashMap::new();
    let mut dsq = |a: usize, b: usize, c: usize, top: usize| -> Q {
        memo.entry((a, b, c, top))
            .or_insert_with(|| d_constant_square(d, &levis[a], &levis[b], &levis[c], &levis[top]).expect("comparable"))
            .clone()
    };
    let mut report = VerificationReport::new("trand");
    let contains = |big: usize, small: usize| levis[big].contains(&levis[small]);
    for m1 in 0..n {
        for m in (0..n).filter(|&m| contains(m, m1)) {
            for s1 in (0..n).filter(|&s1| contains(s1, m1)) {
                for g1 in (0..n).filter(|&g1| contains(g1, s1)) {
                    let lhs = dsq(m1, m, g1, gi);
                    let mut nonzero: Vec<(usize, Q)> = vec![];
                    for s in (0..n).filter(|&s| contains(s, m) && contains(s, s1)) {
                        let t = dsq(m1, m, s1, s) * dsq(s1, s, g1, gi);
                        if !t.is_zero() {
                            nonzero.push((s, t));
                        }
                    }
                    let (rhs, ok, note) = match nonzero.len() {
                        0 => (Q::zero(), lhs.is_zero(), None),
                        1 => (nonzero[0].1.clone(), lhs == nonzero[0].1, None),
                        k => (Q::zero(), false, Some(format!("{k} nonzero summands"))),
                    };
                    let inputs = format!(
                        "{}: M1={} M={} S1={} G1={}",
                        d.label, levis[m1].label, levis[m].label, levis[s1].label, levis[g1].label
                    );
                    let id = format!("trand/{}/{m1:02}-{m:02}-{s1:02}-{g1:02}", d.label);
                    let mut rec = CheckRecord::new(id, "trand", inputs)
                        .values(format!("sq={}", q_string(&lhs)), format!("sq={}", q_string(&rhs)))
                        .pass_if(ok);
                    if let Some(nt) = note {
                        rec = rec.note(nt);
                    }
                    report.push(rec);
                }
            }
        }
    }
    report
}

/// Representatives for the coset tables.
#[derive(Clone, Copy, Debug)]
pub struct CosetFilter<'a> {
    pub l1: &'a Levi,
    pub m: &'a Levi,
    pub s: &'a Levi,
}

fn generic_point(d: &RootDatum, l: &Levi) -> RatVec {
    parabolics(d, l)[0].chamber_point.clone()
}

/// Without a filter: minimal-length representatives of `W_L \ W`.
/// With a filter: minimal-length representatives `w` of `W^L / W^M` with `L1 ⊆ wMw^{-1} ⊆ S`.
pub fn weyl_cosets(d: &RootDatum, l: &Levi, filter: Option<&CosetFilter>) -> Vec<WeylElement> {
    let mut seen: HashSet<RatVec> = HashSet::new();
    let mut out = vec![];
    match filter {
        None => {
            let x = generic_point(d, l);
            for w in d.weyl_group() {
                if seen.insert(w.inverse().matrix.apply(&x)) {
                    out.push(w.clone());
                }
            }
        }
        Some(f) => {
            let xm = generic_point(d, f.m);
            for w in d.weyl_group() {
                if !l.basis.iter().all(|v| &w.matrix.apply(v) == v) {
                    continue;
                }
                if !seen.insert(w.matrix.apply(&xm)) {
                    continue;
                }
                let wm = conjugate_levi(d, w, f.m);
                if wm.contains(f.l1) && f.s.contains(&wm) {
                    out.push(w.clone());
                }
            }
        }
    }
    out
}

/// `W^L`: elements fixing `a_L` pointwise.
pub fn levi_weyl_group(d: &RootDatum, l: &Levi) -> Vec<WeylElement> {
    d.weyl_group()
        .iter()
        .filter(|w| l.basis.iter().all(|v| &w.matrix.apply(v) == v))
        .cloned()
        .collect()
}

/// Root sets of Levis, rendered for reports.
pub fn describe_levi(d: &RootDatum, l: &Levi) -> String {
    let roots: BTreeSet<String> = l.root_subset.iter().filter(|&&i| d.is_positive(i)).map(|&i| d.roots[i].to_string()).collect();
    format!("{} dim={} roots={:?}", l.label, l.dim(), roots)
}
