use num_bigint::BigInt;
use crate::error::{Error, Result};
use crate::exactnum::{IntMatrix, Lattice};
use crate::modules::{free_x_action, FgComplex, FgModule, RMatrix};

/// A free resolution `… → F_1 → F_0 → M` over `Z[x]/(x²)`, truncated at
/// `length` differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    /// `rank F_k`.
    pub ranks: Vec<usize>,
    /// `maps[k]: F_{k+1} → F_k`.
    pub maps: Vec<RMatrix>,
    /// `F_0 → M` on Z-generators.
    pub augmentation: IntMatrix,
    pub resolved: FgModule,
    /// The kernel at the last step vanished, so the resolution is complete.
    pub finite: bool,
}

/// Drops generators lying in the Z-span of the others and their x-multiples.
fn minimize(gens: Vec<Vec<BigInt>>, x: &IntMatrix, floor: &Lattice) -> Vec<Vec<BigInt>> {
    let mut keep = gens;
    let mut j = keep.len();
    while j > 0 {
        j -= 1;
        let mut span: Vec<Vec<BigInt>> = floor.basis_vectors();
        for (k, g) in keep.iter().enumerate() {
            if k != j {
                span.push(g.clone());
                span.push(x.apply(g));
            }
        }
        if Lattice::from_generators(x.rows(), &span).contains(&keep[j]) {
            keep.remove(j);
        }
    }
    keep
}

/// Columns in interleaved coordinates `(a₀, b₀, a₁, b₁, …)` read as an R-matrix.
fn rmatrix_from_columns(rows: usize, cols: &[Vec<BigInt>]) -> RMatrix {
    let mut a = IntMatrix::zeros(rows, cols.len());
    let mut b = IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..rows {
            a[(i, j)] = c[2 * i].clone();
            b[(i, j)] = c[2 * i + 1].clone();
        }
    }
    RMatrix::new(a, b).expect("same shape")
}

pub fn free_resolution(m: &FgModule, length: usize) -> Result<FreeResolution> {
    if length < 1 {
        return Err(Error::Precondition("resolution length must be at least 1".into()));
    }
    let n = m.rank();
    let ident: Vec<Vec<BigInt>> = IntMatrix::identity(n).columns();
    let gens = minimize(ident, m.x_action(), m.relations());
    let r0 = gens.len();
    let mut aug_cols = Vec::with_capacity(2 * r0);
    for g in &gens {
        aug_cols.push(g.clone());
        aug_cols.push(m.x_apply(g));
    }
    let augmentation = IntMatrix::from_cols(n, &aug_cols);
    let mut ranks = vec![r0];
    let mut maps = Vec::new();
    let mut current = augmentation.clone();
    let mut target_rel = m.relations().clone();
    let mut finite = false;
    for _ in 0..length {
        let k = target_rel.preimage(&current);
        let rk = ranks[ranks.len() - 1];
        let x = free_x_action(rk);
        let gens = minimize(k.basis_vectors(), &x, &Lattice::zero(2 * rk));
        if gens.is_empty() {
            finite = true;
            break;
        }
        let d = rmatrix_from_columns(rk, &gens);
        current = d.z_form();
        target_rel = Lattice::zero(2 * rk);
        ranks.push(gens.len());
        maps.push(d);
    }
    Ok(FreeResolution { ranks, maps, augmentation, resolved: m.clone(), finite })
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F` as a cochain complex in degrees `-len .. 0`, tensored with `n`.
    pub fn tensor(&self, n: &FgModule) -> Result<FgComplex> {
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let maps: Vec<RMatrix> = self.maps.iter().rev().cloned().collect();
        FgComplex::from_rmatrices(-(self.length() as i64), &ranks, &maps, n)
    }

    /// `Hom_R(F, n)` in degrees `0 .. len`.
    pub fn hom_into(&self, n: &FgModule) -> Result<FgComplex> {
        let maps: Vec<RMatrix> = self.maps.iter().map(RMatrix::transpose).collect();
        FgComplex::from_rmatrices(0, &self.ranks, &maps, n)
    }

    /// `∂∘∂ = 0` exactly, the augmentation kills the image of `∂₁`, and the
    /// homology vanishes in degrees `1 .. len-1` with `H_0 ≅ M`.
    pub fn verify(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        if let Some(d1) = self.maps.first() {
            let comp = self.augmentation.mul(&d1.z_form())?;
            if !comp.columns().iter().all(|c| self.resolved.relations().contains(c)) {
                return Ok(false);
            }
        }
        let c = self.tensor(&FgModule::free(1))?;
        for k in 1..self.length() {
            if !c.homology(-(k as i64)).is_zero() {
                return Ok(false);
            }
        }
        // H_0 = coker ∂₁ maps isomorphically onto M
        let h0 = c.homology(0);
        let (_, lift) = c.homology_with_lift(0);
        let f = self.augmentation.mul(&lift)?;
        Ok(h0.is_hom(&self.resolved, &f) && h0.hom_is_iso(&self.resolved, &f))
    }
}
