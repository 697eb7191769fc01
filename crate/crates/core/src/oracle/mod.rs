//! Brute-force ground truth for finite modules over `Z[x]/(x²)`, such as
//! `(Z/p^k)[x]/(x²)` and its quotients. Everything here enumerates elements.

pub mod minors;

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{IntMatrix, Lattice};
use crate::modules::{FgModule, RMatrix};
use crate::ring::{Ideal, PrimeIdeal};

pub const ASS_LIMIT: u64 = 1_000_000;
pub const ESSENTIAL_LIMIT: u64 = 100_000;
pub const SEARCH_LIMIT: u64 = 1_000_000;

pub type Elt = Vec<u64>;

/// `⊕ Z/orders[i]` with `x(e_j) = x_cols[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    orders: Vec<u64>,
    x_cols: Vec<Elt>,
}

impl FiniteModule {
    pub fn new(orders: Vec<u64>, x_cols: Vec<Elt>) -> Result<Self> {
        if orders.contains(&0) || orders.contains(&1) {
            return Err(Error::InvalidModule("cyclic orders must exceed 1".into()));
        }
        if x_cols.len() != orders.len() || x_cols.iter().any(|c| c.len() != orders.len()) {
            return Err(Error::Shape("x-action must be square on the generators".into()));
        }
        let m = FiniteModule { orders, x_cols: Vec::new() };
        let x_cols: Vec<Elt> = x_cols.iter().map(|c| m.reduce(c)).collect();
        let m = FiniteModule { x_cols, ..m };
        for j in 0..m.rank() {
            if !m.is_zero(&m.scale(m.orders[j] as i64, &m.x_cols[j])) {
                return Err(Error::InvalidModule(format!("x is not defined on generator {j}")));
            }
            if !m.is_zero(&m.x_apply(&m.x_cols[j])) {
                return Err(Error::InvalidModule("x² must act as zero".into()));
            }
        }
        Ok(m)
    }

    pub fn zero() -> Self {
        FiniteModule { orders: vec![], x_cols: vec![] }
    }

    /// `(Z/p^k)[x]/(x²)` on the basis `1, x`.
    pub fn dual_numbers(p: u64, k: u32) -> Self {
        let n = p.pow(k);
        Self::new(vec![n, n], vec![vec![0, 1], vec![0, 0]]).expect("valid")
    }

    /// `Z/n` with `x = 0`.
    pub fn trivial(n: u64) -> Self {
        Self::new(vec![n], vec![vec![0]]).expect("valid")
    }

    /// The same module with invariant-factor coordinates; fails on infinite modules.
    pub fn from_fg(m: &FgModule) -> Result<Self> {
        let st = m.structure();
        let keep: Vec<usize> = (0..st.invariants.len()).filter(|&i| st.invariants[i] != BigInt::from(1)).collect();
        let mut orders = Vec::new();
        for &i in &keep {
            let d = u64::try_from(&st.invariants[i]).map_err(|_| Error::SizeLimit("invariant too large".into()))?;
            if d == 0 {
                return Err(Error::Precondition(format!("{m} is infinite")));
            }
            orders.push(d);
        }
        let mut x_cols = Vec::new();
        for &j in &keep {
            let v = st.from_coords.col(j);
            let xv = m.x_action().apply(&v);
            let c = st.to_coords.apply(&xv);
            x_cols.push(
                keep.iter()
                    .zip(&orders)
                    .map(|(&i, &n)| u64::try_from(c[i].mod_floor(&BigInt::from(n))).expect("reduced"))
                    .collect(),
            );
        }
        Self::new(orders, x_cols)
    }

    pub fn to_fg(&self) -> FgModule {
        let d: Vec<BigInt> = self.orders.iter().map(|&n| BigInt::from(n)).collect();
        let cols: Vec<Vec<BigInt>> = self.x_cols.iter().map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect();
        FgModule::new(IntMatrix::diag(&d), IntMatrix::from_cols(self.rank(), &cols)).expect("finite module")
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().try_fold(1u64, |a, &n| a.checked_mul(n)).unwrap_or(u64::MAX)
    }

    /// Least common multiple of the orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &n| a.lcm(&n))
    }

    pub fn zero_elt(&self) -> Elt {
        vec![0; self.rank()]
    }

    pub fn basis(&self, j: usize) -> Elt {
        let mut e = self.zero_elt();
        e[j] = 1;
        e
    }

    pub fn is_zero(&self, e: &Elt) -> bool {
        e.iter().all(|&v| v == 0)
    }

    pub fn reduce(&self, e: &[u64]) -> Elt {
        e.iter().zip(&self.orders).map(|(&v, &n)| v % n).collect()
    }

    fn reduce_i(&self, e: &[i128]) -> Elt {
        e.iter().zip(&self.orders).map(|(&v, &n)| v.rem_euclid(n as i128) as u64).collect()
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        a.iter().zip(b).zip(&self.orders).map(|((&u, &v), &n)| (u + v) % n).collect()
    }

    pub fn scale(&self, c: i64, e: &Elt) -> Elt {
        self.reduce_i(&e.iter().map(|&v| c as i128 * v as i128).collect::<Vec<_>>())
    }

    pub fn x_apply(&self, e: &Elt) -> Elt {
        let mut acc = vec![0i128; self.rank()];
        for (j, &c) in e.iter().enumerate() {
            for (i, &v) in self.x_cols[j].iter().enumerate() {
                acc[i] += c as i128 * v as i128;
            }
        }
        self.reduce_i(&acc)
    }

    /// `(a + bx)·e`.
    pub fn act(&self, a: i64, b: i64, e: &Elt) -> Elt {
        self.add(&self.scale(a, e), &self.scale(b, &self.x_apply(e)))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        let size = self.size();
        (0..size).map(move |mut idx| {
            self.orders
                .iter()
                .map(|&n| {
                    let v = idx % n;
                    idx /= n;
                    v
                })
                .collect()
        })
    }

    fn check_size(&self, limit: u64) -> Result<()> {
        if self.size() > limit {
            return Err(Error::SizeLimit(format!("{} elements exceed the limit {limit}", self.size())));
        }
        Ok(())
    }

    /// `ann(e)` by enumerating `a + bx` with `0 ≤ a, b < exponent`.
    pub fn ann(&self, e: &Elt) -> Ideal {
        let n = self.exponent() as i64;
        let mut gens = vec![(n, 0), (0, n)];
        for a in 0..n {
            for b in 0..n {
                if (a, b) != (0, 0) && self.is_zero(&self.act(a, b, e)) {
                    gens.push((a, b));
                }
            }
        }
        Ideal::int(&gens)
    }

    /// Submodule generated by `gens`, as a set.
    pub fn span(&self, gens: &[Elt]) -> HashSet<Elt> {
        let mut seen: HashSet<Elt> = HashSet::new();
        let zero = self.zero_elt();
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        let mut steps: Vec<Elt> = gens.iter().map(|g| self.reduce(g)).collect();
        steps.extend(gens.iter().map(|g| self.x_apply(&self.reduce(g))));
        while let Some(e) = queue.pop_front() {
            for g in &steps {
                let s = self.add(&e, g);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        seen
    }
}

/// `{ann(e) : e ≠ 0, ann(e) prime}`.
pub fn brute_ass(m: &FiniteModule) -> Result<Vec<PrimeIdeal>> {
    m.check_size(ASS_LIMIT)?;
    let mut out = BTreeSet::new();
    for e in m.elements() {
        if m.is_zero(&e) {
            continue;
        }
        if let Some(p) = PrimeIdeal::from_ideal(&m.ann(&e)) {
            out.insert(p);
        }
    }
    Ok(out.into_iter().collect())
}

/// Elements killed by `(q, x)`.
pub fn brute_socle(m: &FiniteModule, q: u64) -> Result<Vec<Elt>> {
    m.check_size(ASS_LIMIT)?;
    Ok(m.elements().filter(|e| m.is_zero(&m.scale(q as i64, e)) && m.is_zero(&m.x_apply(e))).collect())
}

/// Whether every nonzero cyclic submodule of `amb` meets the span of `sub`.
pub fn brute_essential(sub: &[Elt], amb: &FiniteModule) -> Result<bool> {
    amb.check_size(ESSENTIAL_LIMIT)?;
    let s = amb.span(sub);
    for e in amb.elements() {
        if amb.is_zero(&e) {
            continue;
        }
        let c = amb.span(std::slice::from_ref(&e));
        if !c.iter().any(|v| !amb.is_zero(v) && s.contains(v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An R-linear map given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMap {
    pub cols: Vec<Elt>,
}

impl FiniteMap {
    pub fn new(source: &FiniteModule, target: &FiniteModule, cols: Vec<Elt>) -> Result<Self> {
        let f = FiniteMap { cols: cols.iter().map(|c| target.reduce(c)).collect() };
        if f.cols.len() != source.rank() || f.cols.iter().any(|c| c.len() != target.rank()) {
            return Err(Error::Shape("map must send each source generator into the target".into()));
        }
        if !f.is_hom(source, target) {
            return Err(Error::InvalidModule("not an R-linear map".into()));
        }
        Ok(f)
    }

    pub fn zero(source: &FiniteModule, target: &FiniteModule) -> Self {
        FiniteMap { cols: vec![target.zero_elt(); source.rank()] }
    }

    pub fn identity(m: &FiniteModule) -> Self {
        FiniteMap { cols: (0..m.rank()).map(|j| m.basis(j)).collect() }
    }

    pub fn apply(&self, target: &FiniteModule, e: &Elt) -> Elt {
        let mut acc = vec![0i128; target.rank()];
        for (j, &c) in e.iter().enumerate() {
            for (i, &v) in self.cols[j].iter().enumerate() {
                acc[i] += c as i128 * v as i128;
            }
        }
        target.reduce_i(&acc)
    }

    fn is_hom(&self, source: &FiniteModule, target: &FiniteModule) -> bool {
        (0..source.rank()).all(|j| {
            target.is_zero(&target.scale(source.orders[j] as i64, &self.cols[j]))
                && self.apply(target, &source.x_apply(&source.basis(j))) == target.x_apply(&self.cols[j])
        })
    }
}

/// All R-linear maps `a → b`.
pub fn enumerate_homs(a: &FiniteModule, b: &FiniteModule) -> Result<Vec<FiniteMap>> {
    let count = (b.size() as u128).checked_pow(a.rank() as u32).unwrap_or(u128::MAX);
    if count > SEARCH_LIMIT as u128 {
        return Err(Error::SizeLimit(format!("{count} candidate maps exceed the limit {SEARCH_LIMIT}")));
    }
    let elems: Vec<Elt> = b.elements().collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; a.rank()];
    loop {
        let f = FiniteMap { cols: idx.iter().map(|&i| elems[i].clone()).collect() };
        if f.is_hom(a, b) {
            out.push(f);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// A bounded cochain complex of finite modules, `maps[k]: modules[k] → modules[k+1]`.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    pub lo: i64,
    pub modules: Vec<FiniteModule>,
    pub maps: Vec<FiniteMap>,
}

impl FiniteComplex {
    pub fn new(lo: i64, modules: Vec<FiniteModule>, maps: Vec<FiniteMap>) -> Result<Self> {
        if modules.is_empty() || maps.len() + 1 != modules.len() {
            return Err(Error::Shape("a complex of n modules needs n-1 maps".into()));
        }
        for k in 0..maps.len() {
            if !maps[k].is_hom(&modules[k], &modules[k + 1]) {
                return Err(Error::InvalidModule(format!("map {k} is not R-linear")));
            }
        }
        for k in 1..maps.len() {
            for j in 0..modules[k - 1].rank() {
                let once = maps[k - 1].apply(&modules[k], &modules[k - 1].basis(j));
                if !modules[k + 1].is_zero(&maps[k].apply(&modules[k + 1], &once)) {
                    return Err(Error::InvalidModule("d∘d is not zero".into()));
                }
            }
        }
        Ok(FiniteComplex { lo, modules, maps })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.modules.len() as i64 - 1
    }

    pub fn module_at(&self, n: i64) -> Option<&FiniteModule> {
        (n >= self.lo && n <= self.hi()).then(|| &self.modules[(n - self.lo) as usize])
    }

    pub fn map_at(&self, n: i64) -> Option<&FiniteMap> {
        (n >= self.lo && n < self.hi()).then(|| &self.maps[(n - self.lo) as usize])
    }
}

fn lattice_of(m: &FiniteModule, set: impl Iterator<Item = Elt>) -> Lattice {
    let rel: Vec<Vec<BigInt>> = m
        .orders
        .iter()
        .enumerate()
        .map(|(j, &n)| (0..m.rank()).map(|i| BigInt::from(if i == j { n } else { 0 })).collect())
        .collect();
    let mut l = Lattice::from_generators(m.rank(), &rel);
    for e in set {
        let v: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
        if !l.contains(&v) {
            l = l.sum(&Lattice::from_generators(m.rank(), &[v]));
        }
    }
    l
}

fn structure_of(m: &FiniteModule, k: Lattice) -> Result<FiniteModule> {
    let fg = m.to_fg();
    let (q, _) = FgModule::subquotient(fg.x_action(), &k, fg.relations())?;
    FiniteModule::from_fg(&q)
}

#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    /// `|ker| / |im|` from the enumeration.
    pub size: u64,
    pub module: FiniteModule,
}

/// `H^n` by enumerating kernel and image.
pub fn brute_homology(c: &FiniteComplex, n: i64) -> Result<FiniteQuotient> {
    let Some(m) = c.module_at(n) else {
        return Ok(FiniteQuotient { size: 1, module: FiniteModule::zero() });
    };
    m.check_size(ASS_LIMIT)?;
    let ker: Vec<Elt> = match (c.map_at(n), c.module_at(n + 1)) {
        (Some(d), Some(t)) => m.elements().filter(|e| t.is_zero(&d.apply(t, e))).collect(),
        _ => m.elements().collect(),
    };
    let im: HashSet<Elt> = match (c.map_at(n - 1), c.module_at(n - 1)) {
        (Some(d), Some(s)) => {
            s.check_size(ASS_LIMIT)?;
            s.elements().map(|e| d.apply(m, &e)).collect()
        }
        _ => HashSet::from([m.zero_elt()]),
    };
    let size = ker.len() as u64 / im.len() as u64;
    let fg = m.to_fg();
    let k = lattice_of(m, ker.into_iter());
    let l = lattice_of(m, im.into_iter());
    let (q, _) = FgModule::subquotient(fg.x_action(), &k, &l)?;
    let module = FiniteModule::from_fg(&q)?;
    if module.size() != size {
        return Err(Error::InvalidModule("enumerated homology disagrees with its structure".into()));
    }
    Ok(FiniteQuotient { size, module })
}

/// `Hom_Z(N^r, Z/p^k)` for `N = (Z/p^k)[x]/(x²)`, coordinates the values on
/// `e_j, x·e_j`; `x` sends `(f0, f1)` to `(f1, 0)` in each slot.
pub fn dual_power(p: u64, k: u32, r: usize) -> FiniteModule {
    let q = p.pow(k);
    let cols = (0..2 * r)
        .map(|j| {
            let mut c = vec![0; 2 * r];
            if j % 2 == 1 {
                c[j - 1] = 1;
            }
            c
        })
        .collect();
    FiniteModule::new(vec![q; 2 * r], cols).expect("dual power")
}

/// The finite model of a window `Hom_Z(N^{r_0}, Z(p^∞)) → …` with R-matrix
/// differentials over `N = R/(p^k)`: `d` acts by `φ ↦ φ ∘ dᵀ`.
pub fn dual_window(p: u64, k: u32, lo: i64, ranks: &[usize], maps: &[RMatrix]) -> Result<FiniteComplex> {
    let q = p.pow(k) as i128;
    let modules: Vec<FiniteModule> = ranks.iter().map(|&r| dual_power(p, k, r)).collect();
    let mut fmaps = Vec::new();
    for (n, d) in maps.iter().enumerate() {
        let mut images = Vec::new();
        for j in 0..d.cols() {
            for part in 0..2 {
                let mut img = vec![0u64; 2 * d.rows()];
                for i in 0..d.rows() {
                    let (a, b) = d.entry(i, j).int_coords().ok_or_else(|| Error::Precondition("integer entries".into()))?;
                    let big = |v: BigInt| i128::try_from(v).map_err(|_| Error::SizeLimit("matrix entry".into()));
                    let (a, b) = (big(a)?, big(b)?);
                    // dᵀ e_i = Σ d_ij e_j and dᵀ (x e_i) = Σ a_ij x e_j
                    let (on_one, on_x) = if part == 0 { (a, 0) } else { (b, a) };
                    img[2 * i] = on_one.rem_euclid(q) as u64;
                    img[2 * i + 1] = on_x.rem_euclid(q) as u64;
                }
                images.push(img);
            }
        }
        fmaps.push(FiniteMap::new(&modules[n], &modules[n + 1], images)?);
    }
    FiniteComplex::new(lo, modules, fmaps)
}

/// `a ⊗_R b = (a ⊗_Z b) / (xu ⊗ v - u ⊗ xv)`.
pub fn brute_tensor(a: &FiniteModule, b: &FiniteModule) -> Result<FiniteModule> {
    let (ra, rb) = (a.rank(), b.rank());
    let n = ra * rb;
    let g = |i: usize, j: usize| i * rb + j;
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..ra {
        for j in 0..rb {
            let mut v = vec![BigInt::from(0); n];
            v[g(i, j)] = BigInt::from(a.orders[i].gcd(&b.orders[j]));
            rels.push(v);
            let mut w = vec![BigInt::from(0); n];
            for k in 0..ra {
                w[g(k, j)] += BigInt::from(a.x_cols[i][k]);
            }
            for l in 0..rb {
                w[g(i, l)] -= BigInt::from(b.x_cols[j][l]);
            }
            rels.push(w);
        }
    }
    let mut x = IntMatrix::zeros(n, n);
    let mut xcols = Vec::new();
    for i in 0..ra {
        for j in 0..rb {
            let mut c = vec![BigInt::from(0); n];
            for k in 0..ra {
                c[g(k, j)] += BigInt::from(a.x_cols[i][k]);
            }
            xcols.push(c);
        }
    }
    if n > 0 {
        x = IntMatrix::from_cols(n, &xcols);
    }
    let pres = IntMatrix::from_cols(n, &rels);
    let t = FgModule::new(pres, x)?;
    FiniteModule::from_fg(&t)
}

/// `Hom_R(a, b)` by enumerating maps; the result lives in `b^{rank a}`.
pub fn brute_hom(a: &FiniteModule, b: &FiniteModule) -> Result<FiniteModule> {
    let homs = enumerate_homs(a, b)?;
    let orders: Vec<u64> = (0..a.rank()).flat_map(|_| b.orders.iter().copied()).collect();
    let mut xcols = Vec::new();
    for blk in 0..a.rank() {
        for j in 0..b.rank() {
            let mut c = vec![0u64; orders.len()];
            for (i, &v) in b.x_cols[j].iter().enumerate() {
                c[blk * b.rank() + i] = v;
            }
            xcols.push(c);
        }
    }
    if orders.is_empty() {
        return Ok(FiniteModule::zero());
    }
    let amb = FiniteModule::new(orders, xcols)?;
    let k = lattice_of(&amb, homs.iter().map(|f| f.cols.concat()));
    let out = structure_of(&amb, k)?;
    if out.size() != homs.len() as u64 {
        return Err(Error::InvalidModule("enumerated Hom disagrees with its structure".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct HomotopySearch {
    /// `h^n: C^n → C^{n-1}` for `n = lo+1 ..= hi`.
    pub found: Option<Vec<FiniteMap>>,
    pub candidates: u64,
}

/// Exhaustive search for `h` with `∂h + h∂ = id` in every degree of `c`.
pub fn brute_homotopy(c: &FiniteComplex) -> Result<HomotopySearch> {
    let k = c.modules.len();
    let mut spaces = Vec::new();
    let mut total: u64 = 1;
    for j in 1..k {
        let hs = enumerate_homs(&c.modules[j], &c.modules[j - 1])?;
        total = total.saturating_mul(hs.len() as u64);
        spaces.push(hs);
    }
    if total > SEARCH_LIMIT {
        return Err(Error::SizeLimit(format!("{total} candidate homotopies exceed the limit {SEARCH_LIMIT}")));
    }
    let mut idx = vec![0usize; spaces.len()];
    let mut tried = 0u64;
    loop {
        tried += 1;
        let ok = (0..k).all(|n| {
            let m = &c.modules[n];
            (0..m.rank()).all(|g| {
                let e = m.basis(g);
                let mut s = m.zero_elt();
                if n >= 1 {
                    let h = &spaces[n - 1][idx[n - 1]];
                    let down = h.apply(&c.modules[n - 1], &e);
                    s = m.add(&s, &c.maps[n - 1].apply(m, &down));
                }
                if n + 1 < k {
                    let up = c.maps[n].apply(&c.modules[n + 1], &e);
                    s = m.add(&s, &spaces[n][idx[n]].apply(m, &up));
                }
                s == e
            })
        });
        if ok {
            let h = idx.iter().enumerate().map(|(j, &i)| spaces[j][i].clone()).collect();
            return Ok(HomotopySearch { found: Some(h), candidates: tried });
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(HomotopySearch { found: None, candidates: tried });
            }
            idx[j] += 1;
            if idx[j] < spaces[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::ass_fg;
    use crate::ring::Ideal;

    fn rt(p: u64) -> FiniteModule {
        FiniteModule::dual_numbers(p, 1)
    }

    fn x_map(p: u64) -> FiniteMap {
        FiniteMap::new(&rt(p), &rt(p), vec![vec![0, 1], vec![0, 0]]).unwrap()
    }

    #[test]
    fn ass_examples() {
        assert_eq!(brute_ass(&rt(2)).unwrap(), vec![PrimeIdeal::MaximalAt(2)]);
        assert_eq!(brute_ass(&FiniteModule::trivial(2)).unwrap(), vec![PrimeIdeal::MaximalAt(2)]);
        assert!(brute_ass(&FiniteModule::zero()).unwrap().is_empty());
        let m = FgModule::cyclic(&Ideal::int(&[(4, 0), (0, 2)])).unwrap();
        assert_eq!(brute_ass(&FiniteModule::from_fg(&m).unwrap()).unwrap(), ass_fg(&m));
    }

    #[test]
    fn essential_examples() {
        let r = rt(2);
        assert!(brute_essential(&[vec![0, 1]], &r).unwrap());
        assert!(!brute_essential(&[], &r).unwrap());
        assert!(brute_essential(&[vec![1, 0]], &r).unwrap());
        let two = FiniteModule::new(vec![2, 2], vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!brute_essential(&[vec![1, 0]], &two).unwrap());
    }

    #[test]
    fn homotopy_examples() {
        for p in [2, 3] {
            let c = FiniteComplex::new(0, vec![rt(p), rt(p)], vec![x_map(p)]).unwrap();
            assert!(brute_homotopy(&c).unwrap().found.is_none());
            let id = FiniteComplex::new(0, vec![rt(p), rt(p)], vec![FiniteMap::identity(&rt(p))]).unwrap();
            assert!(brute_homotopy(&id).unwrap().found.is_some());
        }
        let z = FiniteComplex::new(0, vec![FiniteModule::zero()], vec![]).unwrap();
        assert!(brute_homotopy(&z).unwrap().found.is_some());
    }

    #[test]
    fn homology_tensor_hom_examples() {
        for p in [2, 3] {
            let c = FiniteComplex::new(0, vec![rt(p), rt(p), rt(p), rt(p)], vec![x_map(p), x_map(p), x_map(p)]).unwrap();
            let h0 = brute_homology(&c, 0).unwrap();
            assert_eq!(h0.size, p);
            assert!(brute_homology(&c, 1).unwrap().size == 1);
            let k = FiniteModule::trivial(p);
            let t = brute_tensor(&rt(p), &k).unwrap();
            assert_eq!(t.size(), p);
            let h = brute_hom(&k, &rt(p)).unwrap();
            assert_eq!(h.size(), p);
            assert_eq!(brute_tensor(&rt(p), &rt(p)).unwrap().size(), p * p);
        }
    }

    #[test]
    fn fg_round_trip() {
        let m = FgModule::trivial_x(&[4, 6]);
        let f = FiniteModule::from_fg(&m).unwrap();
        assert_eq!(f.size(), 24);
        assert!(FiniteModule::from_fg(&FgModule::free(1)).is_err());
        assert!(brute_ass(&FiniteModule::dual_numbers(2, 10)).is_err());
    }
}
