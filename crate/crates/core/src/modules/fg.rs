use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::injective::{Element, Socle};
use super::rmatrix::{free_x_action, RMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{prime_divisors, smith_normal_form, IntMatrix, Lattice};
use crate::ring::{BaseRing, Ideal, PrimeIdeal, RingElt};

/// A finitely presented `Z[x]/(x²)`-module: `Z^rank` modulo the column span
/// of `presentation`, with `x` acting on generators through `x_action`.
#[derive(Clone, Debug)]
pub struct FgModule {
    rank: usize,
    presentation: IntMatrix,
    x_action: IntMatrix,
    relations: Lattice,
}

/// Smith coordinates: `y = to_coords · v` identifies the module with
/// `⊕ Z/d_i` (`d_i = 0` for free summands); column `i` of `from_coords`
/// generates the `i`-th summand.
#[derive(Clone, Debug)]
pub struct Structure {
    pub invariants: Vec<BigInt>,
    pub to_coords: IntMatrix,
    pub from_coords: IntMatrix,
}

impl FgModule {
    pub fn new(presentation: IntMatrix, x_action: IntMatrix) -> Result<Self> {
        let rank = presentation.rows();
        if x_action.rows() != rank || x_action.cols() != rank {
            return Err(Error::InvalidModule(format!("x-action must be {rank}x{rank}")));
        }
        let relations = Lattice::from_matrix(&presentation);
        let m = FgModule { rank, presentation, x_action, relations };
        for r in m.relations.basis_vectors() {
            if !m.relations.contains(&m.x_action.apply(&r)) {
                return Err(Error::InvalidModule("x does not preserve the relations".into()));
            }
        }
        let x2 = m.x_action.mul(&m.x_action)?;
        for j in 0..rank {
            if !m.relations.contains(&x2.col(j)) {
                return Err(Error::InvalidModule("x² is not zero on the module".into()));
            }
        }
        Ok(m)
    }

    pub fn zero() -> Self {
        Self::new(IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0)).expect("zero module")
    }

    /// `R^n` on the Z-basis `(e₀, x·e₀, e₁, x·e₁, …)`.
    pub fn free(n: usize) -> Self {
        Self::new(IntMatrix::zeros(2 * n, 0), free_x_action(n)).expect("free module")
    }

    /// `R/I` for an ideal of `Z[x]/(x²)`, on generators `1, x`.
    pub fn cyclic(i: &Ideal) -> Result<Self> {
        if i.base() != BaseRing::Integers {
            return Err(Error::Precondition("cyclic modules are built over Z[x]/(x²)".into()));
        }
        Self::new(i.lattice().basis().clone(), free_x_action(1))
    }

    /// `R/𝔭`.
    pub fn quotient_by_prime(p: PrimeIdeal) -> Self {
        Self::cyclic(&p.to_ideal()).expect("prime ideal")
    }

    /// `⊕ Z/n_i` with `x = 0` (`n_i = 0` gives a copy of `Z`).
    pub fn trivial_x(orders: &[u64]) -> Self {
        let d: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
        let n = d.len();
        Self::new(IntMatrix::diag(&d), IntMatrix::zeros(n, n)).expect("trivial x-action")
    }

    /// `coker(R^cols → R^rows)` for an R-matrix.
    pub fn cokernel(m: &RMatrix) -> Self {
        Self::new(m.z_form(), free_x_action(m.rows())).expect("cokernel of free modules")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    pub fn x_action(&self) -> &IntMatrix {
        &self.x_action
    }

    pub fn relations(&self) -> &Lattice {
        &self.relations
    }

    pub fn is_zero(&self) -> bool {
        self.relations.is_full()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let pres = IntMatrix::block_diag(&[self.relations.basis().clone(), other.relations.basis().clone()]);
        let x = IntMatrix::block_diag(&[self.x_action.clone(), other.x_action.clone()]);
        Self::new(pres, x).expect("sum of modules")
    }

    pub fn power(&self, n: usize) -> Self {
        (0..n).fold(Self::zero(), |acc, _| acc.direct_sum(self))
    }

    pub fn structure(&self) -> Structure {
        let basis = self.relations.basis();
        let (s, u, _) = smith_normal_form(basis);
        let invariants = (0..self.rank)
            .map(|i| if i < s.cols() { s[(i, i)].clone() } else { BigInt::zero() })
            .collect();
        let from_coords = u.inverse_unimodular().expect("unimodular");
        Structure { invariants, to_coords: u, from_coords }
    }

    /// Z-rank.
    pub fn free_rank(&self) -> usize {
        self.rank - self.relations.rank()
    }

    /// Invariant factors `d > 1` of the torsion subgroup.
    pub fn torsion_invariants(&self) -> Vec<BigInt> {
        self.structure().invariants.into_iter().filter(|d| *d > BigInt::one()).collect()
    }

    /// Order of the underlying group when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.relations.index()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.relations.contains(v)
    }

    pub fn eq_elements(&self, v: &[BigInt], w: &[BigInt]) -> bool {
        let d: Vec<BigInt> = v.iter().zip(w).map(|(a, b)| a - b).collect();
        self.is_zero_element(&d)
    }

    pub fn x_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.x_action.apply(v)
    }

    pub fn scalar_apply(&self, r: &RingElt, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let (a, b) = r
            .int_coords()
            .ok_or_else(|| Error::ScalarOutsideRing(r.to_string(), "finitely presented module".into()))?;
        let xv = self.x_apply(v);
        Ok(v.iter().zip(&xv).map(|(s, t)| &a * s + &b * t).collect())
    }

    /// `v` has finite additive order.
    pub fn is_torsion_element(&self, v: &[BigInt]) -> bool {
        let q: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        self.relations.rational_coords(&q).is_some()
    }

    /// `{(c, d) : c·v + d·x·v = 0}`.
    pub fn elem_annihilator(&self, v: &[BigInt]) -> Ideal {
        let a = IntMatrix::from_cols(self.rank, &[v.to_vec(), self.x_apply(v)]);
        Ideal::from_lattice(self.relations.preimage(&a)).expect("annihilators are ideals")
    }

    pub fn annihilator(&self) -> Ideal {
        let mut acc = Ideal::unit(BaseRing::Integers);
        for j in 0..self.rank {
            let mut e = vec![BigInt::zero(); self.rank];
            e[j] = BigInt::one();
            acc = acc.intersect(&self.elem_annihilator(&e)).expect("integer ideals");
        }
        acc
    }

    /// `M_𝔭 = 0`, i.e. the annihilator is not inside `𝔭`.
    pub fn localizes_to_zero(&self, p: PrimeIdeal) -> bool {
        !p.contains_ideal(&self.annihilator())
    }

    /// Prime divisors of the nonzero invariant factors.
    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.torsion_invariants().iter().flat_map(prime_divisors).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The subquotient `K/L` of this module's generator lattice (`L ⊆ K`, both
    /// x-stable modulo `L`), with the matrix embedding its generators.
    pub fn subquotient(x_action: &IntMatrix, k: &Lattice, l: &Lattice) -> Result<(FgModule, IntMatrix)> {
        let b = k.basis().clone();
        let m = k.rank();
        let mut rel_cols = Vec::new();
        for v in l.basis_vectors() {
            rel_cols.push(k.coords(&v).ok_or_else(|| Error::InvalidModule("L is not inside K".into()))?);
        }
        let mut x_cols = Vec::new();
        for j in 0..m {
            let xv = x_action.apply(&b.col(j));
            x_cols.push(k.coords(&xv).ok_or_else(|| Error::InvalidModule("K is not x-stable".into()))?);
        }
        let module = FgModule::new(IntMatrix::from_cols(m, &rel_cols), IntMatrix::from_cols(m, &x_cols))?;
        Ok((module, b))
    }

    /// `{m : x·m = 0}`.
    pub fn kernel_of_x(&self) -> FgModule {
        let k = self.relations.preimage(&self.x_action);
        Self::subquotient(&self.x_action, &k, &self.relations).expect("ker x").0
    }

    /// `x·M`.
    pub fn image_of_x(&self) -> FgModule {
        let k = Lattice::from_matrix(&self.x_action).sum(&self.relations);
        Self::subquotient(&self.x_action, &k, &self.relations).expect("x M").0
    }

    /// `{m : a·m = 0}` for an integer `a`.
    pub fn kernel_of_scalar(&self, a: &BigInt) -> FgModule {
        let k = self.relations.preimage(&IntMatrix::scalar(self.rank, a));
        Self::subquotient(&self.x_action, &k, &self.relations).expect("torsion").0
    }

    /// Iso-invariant summary: invariant factors of `M`, `ker x` and `x·M`.
    pub fn fingerprint(&self) -> Fingerprint {
        let inv = |m: &FgModule| -> Vec<BigInt> {
            let mut v: Vec<BigInt> = m.structure().invariants.into_iter().filter(|d| !d.is_one()).collect();
            v.sort();
            v
        };
        Fingerprint { module: inv(self), kernel_of_x: inv(&self.kernel_of_x()), image_of_x: inv(&self.image_of_x()) }
    }

    /// Socle `{m : 𝔮·m = 0}` at a maximal prime, with an `F_q`-basis.
    pub fn socle(&self, q: PrimeIdeal) -> Result<Socle> {
        let PrimeIdeal::MaximalAt(qq) = q else {
            return Err(Error::Precondition("socles of finitely presented modules are taken at maximal primes".into()));
        };
        let stacked = IntMatrix::scalar(self.rank, &BigInt::from(qq)).vstack(&self.x_action)?;
        let target = Lattice::from_matrix(&IntMatrix::block_diag(&[
            self.relations.basis().clone(),
            self.relations.basis().clone(),
        ]));
        let k = target.preimage(&stacked);
        let (sub, emb) = Self::subquotient(&self.x_action, &k, &self.relations)?;
        let st = sub.structure();
        let generators = st
            .invariants
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
            .map(|(i, _)| Element::Vector(emb.apply(&st.from_coords.col(i))))
            .collect();
        Ok(Socle { prime: q, generators })
    }

    /// Whether `f` (target generators × source generators) defines a module map.
    pub fn is_hom(&self, target: &FgModule, f: &IntMatrix) -> bool {
        if f.rows() != target.rank || f.cols() != self.rank {
            return false;
        }
        let rel_ok = self.relations.basis_vectors().iter().all(|r| target.relations.contains(&f.apply(r)));
        let comm = match (target.x_action.mul(f), f.mul(&self.x_action)) {
            (Ok(a), Ok(b)) => a.add(&b.neg()).expect("shape"),
            _ => return false,
        };
        rel_ok && comm.columns().iter().all(|c| target.relations.contains(c))
    }

    /// Kernel and cokernel of a module map.
    pub fn kernel_cokernel(&self, target: &FgModule, f: &IntMatrix) -> (FgModule, FgModule) {
        let k = target.relations.preimage(f);
        let ker = Self::subquotient(&self.x_action, &k, &self.relations).expect("kernel").0;
        let im = Lattice::from_matrix(f).sum(&target.relations);
        let coker = Self::subquotient(&target.x_action, &Lattice::full(target.rank), &im).expect("cokernel").0;
        (ker, coker)
    }

    pub fn hom_is_iso(&self, target: &FgModule, f: &IntMatrix) -> bool {
        let (k, c) = self.kernel_cokernel(target, f);
        k.is_zero() && c.is_zero()
    }

    /// Candidate witness for `(x) ∈ ass`: a non-torsion element killed by `x`.
    pub fn minimal_prime_witness(&self) -> Option<Vec<BigInt>> {
        let k = self.relations.preimage(&self.x_action);
        k.basis_vectors().into_iter().find(|v| !self.is_torsion_element(v))
    }
}

impl PartialEq for FgModule {
    /// Equality of presentations: same generators, relations and x-action.
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.relations == other.relations
            && (0..self.rank).all(|j| {
                let d: Vec<BigInt> =
                    self.x_action.col(j).iter().zip(other.x_action.col(j)).map(|(a, b)| a - b).collect();
                self.relations.contains(&d)
            })
    }
}

impl Eq for FgModule {}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .structure()
            .invariants
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "<{}; x={}>", parts.join("+"), self.x_action)
    }
}

/// Invariant factors (excluding 1, with 0 for `Z`) of `M`, `ker x`, `x·M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub module: Vec<BigInt>,
    pub kernel_of_x: Vec<BigInt>,
    pub image_of_x: Vec<BigInt>,
}

/// A bounded cochain complex of finitely presented modules, degrees
/// `lo .. lo + modules.len()`, with `maps[k]: modules[k] → modules[k+1]`.
#[derive(Clone, Debug)]
pub struct FgComplex {
    lo: i64,
    modules: Vec<FgModule>,
    maps: Vec<IntMatrix>,
}

impl FgComplex {
    pub fn new(lo: i64, modules: Vec<FgModule>, maps: Vec<IntMatrix>) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Shape("a complex of n modules needs n-1 maps".into()));
        }
        for (k, f) in maps.iter().enumerate() {
            if !modules[k].is_hom(&modules[k + 1], f) {
                return Err(Error::InvalidModule(format!("map in position {k} is not a module map")));
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            let dd = maps[k + 1].mul(&maps[k])?;
            if !dd.columns().iter().all(|c| modules[k + 2].relations.contains(c)) {
                return Err(Error::InvalidModule(format!("d∘d ≠ 0 in position {k}")));
            }
        }
        Ok(FgComplex { lo, modules, maps })
    }

    /// Complex of free modules from R-matrices `maps[k]: R^{ranks[k]} → R^{ranks[k+1]}`,
    /// tensored with `n` (each map acts blockwise through `n`'s x-action).
    pub fn from_rmatrices(lo: i64, ranks: &[usize], maps: &[RMatrix], n: &FgModule) -> Result<Self> {
        let modules: Vec<FgModule> = ranks.iter().map(|&r| n.power(r)).collect();
        let ints: Vec<IntMatrix> = maps.iter().map(|m| m.act_on(n.x_action())).collect();
        Self::new(lo, modules, ints)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn module_at(&self, n: i64) -> Option<&FgModule> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.modules[(n - self.lo) as usize])
        }
    }

    pub fn map_at(&self, n: i64) -> Option<&IntMatrix> {
        if n < self.lo || n >= self.hi() {
            None
        } else {
            Some(&self.maps[(n - self.lo) as usize])
        }
    }

    /// Cocycle and coboundary lattices in degree `n`.
    pub fn cycles_boundaries(&self, n: i64) -> Option<(Lattice, Lattice)> {
        let m = self.module_at(n)?;
        let z = match self.map_at(n) {
            Some(d) => self.module_at(n + 1).expect("target").relations.preimage(d),
            None => Lattice::full(m.rank),
        };
        let b = match self.map_at(n - 1) {
            Some(d) => Lattice::from_matrix(d).sum(&m.relations),
            None => m.relations.clone(),
        };
        Some((z, b))
    }

    /// `H^n` with the matrix lifting its generators to cocycles.
    pub fn homology_with_lift(&self, n: i64) -> (FgModule, IntMatrix) {
        match (self.module_at(n), self.cycles_boundaries(n)) {
            (Some(m), Some((z, b))) => FgModule::subquotient(m.x_action(), &z, &b).expect("homology"),
            _ => (FgModule::zero(), IntMatrix::zeros(0, 0)),
        }
    }

    pub fn homology(&self, n: i64) -> FgModule {
        self.homology_with_lift(n).0
    }

    /// Map induced on `H^n` by a chain map given degreewise by `f`.
    pub fn induced_map(&self, target: &FgComplex, n: i64, f: &IntMatrix) -> Result<(FgModule, FgModule, IntMatrix)> {
        let (hs, lift) = self.homology_with_lift(n);
        let (ht, _) = target.homology_with_lift(n);
        let Some((zt, _)) = target.cycles_boundaries(n) else {
            return Ok((hs.clone(), ht, IntMatrix::zeros(0, hs.rank())));
        };
        let mut cols = Vec::new();
        for j in 0..hs.rank() {
            let img = f.apply(&lift.col(j));
            cols.push(zt.coords(&img).ok_or_else(|| Error::InvalidModule("image is not a cocycle".into()))?);
        }
        let m = IntMatrix::from_cols(ht.rank(), &cols);
        Ok((hs, ht, m))
    }
}

/// Associated primes of a finitely presented module, each with a certified
/// witness element whose annihilator is exactly that prime.
pub fn ass_fg_witnessed(m: &FgModule) -> Vec<(PrimeIdeal, Vec<BigInt>)> {
    let mut out = Vec::new();
    if let Some(w) = m.minimal_prime_witness() {
        debug_assert_eq!(m.elem_annihilator(&w), PrimeIdeal::MinimalX.to_ideal());
        out.push((PrimeIdeal::MinimalX, w));
    }
    for q in m.torsion_primes() {
        let p = PrimeIdeal::MaximalAt(q);
        let soc = m.socle(p).expect("maximal prime");
        if let Some(Element::Vector(v)) = soc.generators.into_iter().next() {
            debug_assert_eq!(m.elem_annihilator(&v), p.to_ideal());
            out.push((p, v));
        }
    }
    out
}

pub fn ass_fg(m: &FgModule) -> Vec<PrimeIdeal> {
    ass_fg_witnessed(m).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn construction_checks() {
        assert!(FgModule::free(2).x_action().rows() == 4);
        // x² ≠ 0 on Z² with a Jordan block of size 3 truncated
        let bad = FgModule::new(IntMatrix::zeros(3, 0), IntMatrix::from_rows(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]));
        assert!(bad.is_err());
        // relations not x-stable
        let bad = FgModule::new(IntMatrix::from_rows(&[vec![1], vec![0]]), free_x_action(1));
        assert!(bad.is_err());
        assert!(FgModule::cyclic(&Ideal::unit(BaseRing::Integers)).unwrap().is_zero());
    }

    #[test]
    fn ass_examples() {
        assert_eq!(ass_fg(&FgModule::free(1)), vec![PrimeIdeal::MinimalX]);
        for q in [2, 3, 7] {
            assert_eq!(ass_fg(&FgModule::quotient_by_prime(PrimeIdeal::MaximalAt(q))), vec![PrimeIdeal::MaximalAt(q)]);
        }
        assert_eq!(ass_fg(&FgModule::quotient_by_prime(PrimeIdeal::MinimalX)), vec![PrimeIdeal::MinimalX]);
        assert!(ass_fg(&FgModule::zero()).is_empty());
        // R/(4, x) ⊕ R/(x): (2,x) and (x)
        let m = FgModule::cyclic(&Ideal::int(&[(4, 0), (0, 1)])).unwrap().direct_sum(&FgModule::quotient_by_prime(PrimeIdeal::MinimalX));
        assert_eq!(ass_fg(&m), vec![PrimeIdeal::MinimalX, PrimeIdeal::MaximalAt(2)]);
        // R/(9): the element 3x has annihilator (3, x)
        let m = FgModule::cyclic(&Ideal::int(&[(9, 0)])).unwrap();
        assert_eq!(ass_fg(&m), vec![PrimeIdeal::MaximalAt(3)]);
    }

    #[test]
    fn annihilators_and_localization() {
        let r = FgModule::free(1);
        assert_eq!(r.elem_annihilator(&v(&[0, 1])), PrimeIdeal::MinimalX.to_ideal());
        assert!(r.elem_annihilator(&v(&[1, 0])).is_zero_ideal());
        assert!(r.elem_annihilator(&v(&[0, 0])).is_unit_ideal());
        let k2 = FgModule::quotient_by_prime(PrimeIdeal::MaximalAt(2));
        assert!(k2.localizes_to_zero(PrimeIdeal::MinimalX));
        assert!(k2.localizes_to_zero(PrimeIdeal::MaximalAt(3)));
        assert!(!k2.localizes_to_zero(PrimeIdeal::MaximalAt(2)));
        assert!(!r.localizes_to_zero(PrimeIdeal::MinimalX));
    }

    #[test]
    fn socle_of_free_and_residue() {
        let r = FgModule::free(1);
        assert!(r.socle(PrimeIdeal::MaximalAt(2)).unwrap().is_zero());
        let k = FgModule::quotient_by_prime(PrimeIdeal::MaximalAt(5));
        assert_eq!(k.socle(PrimeIdeal::MaximalAt(5)).unwrap().dim(), 1);
        let m = FgModule::cyclic(&Ideal::int(&[(4, 0)])).unwrap();
        let s = m.socle(PrimeIdeal::MaximalAt(2)).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.size(), Some(BigInt::from(2)));
        assert!(FgModule::zero().socle(PrimeIdeal::MaximalAt(3)).unwrap().is_zero());
    }

    #[test]
    fn homology_of_x_complex() {
        // R →x R →x R: H at the middle is ker x / im x = 0, at the start ker x ≅ R/(x)
        let x = RMatrix::x_times_identity(1);
        let c = FgComplex::from_rmatrices(0, &[1, 1, 1], &[x.clone(), x], &FgModule::free(1)).unwrap();
        assert!(c.homology(1).is_zero());
        let h0 = c.homology(0);
        assert_eq!(h0.fingerprint(), FgModule::quotient_by_prime(PrimeIdeal::MinimalX).fingerprint());
        let h2 = c.homology(2);
        assert_eq!(h2.fingerprint(), FgModule::quotient_by_prime(PrimeIdeal::MinimalX).fingerprint());
        assert!(c.homology(5).is_zero());
    }

    #[test]
    fn hom_iso_detection() {
        let m = FgModule::trivial_x(&[6]);
        assert!(m.hom_is_iso(&m, &IntMatrix::from_rows(&[vec![5]])));
        assert!(!m.hom_is_iso(&m, &IntMatrix::from_rows(&[vec![2]])));
        assert!(m.is_hom(&m, &IntMatrix::from_rows(&[vec![2]])));
    }
}
