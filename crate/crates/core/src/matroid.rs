//! Matroid independence oracles, basis enumeration and the Brualdi exchange
//! bijection.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::check::{CheckReport, Mode, Property, ViolationKind, ViolationWitness};
use crate::error::{Error, Result};
use crate::ground::{k_subsets, Subset};

/// Largest ground set stored as an explicit independence table.
pub const EXPLICIT_CAP: usize = 20;
/// Largest ground set on which explicit families are validated.
pub const VALIDATE_CAP: usize = 14;
/// Largest ground set for which bases are enumerated from a non-explicit kind.
pub const ENUMERATE_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidKind {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        caps: Vec<usize>,
        block_of: Vec<usize>,
    },
    /// Bit `m` is set iff the set with bitmask `m` is independent.
    Explicit {
        table: FixedBitSet,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    kind: MatroidKind,
    rank: usize,
    validated: bool,
}

impl Matroid {
    pub fn uniform(n: usize, rank: usize) -> Matroid {
        Matroid { n, kind: MatroidKind::Uniform { rank }, rank: rank.min(n), validated: true }
    }

    /// Blocks must partition `0..n`; at most `caps[b]` elements may come from
    /// block `b`.
    pub fn partition(n: usize, blocks: Vec<Vec<usize>>, caps: Vec<usize>) -> Result<Matroid> {
        if blocks.len() != caps.len() {
            return Err(Error::InvalidMatroid(format!("{} blocks but {} caps", blocks.len(), caps.len())));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::InvalidMatroid(format!("block {b} names element {e} >= {n}")));
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::InvalidMatroid(format!("element {e} is in two blocks")));
                }
                block_of[e] = b;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidMatroid(format!("element {e} is in no block")));
        }
        let rank = blocks.iter().zip(&caps).map(|(b, &c)| b.len().min(c)).sum();
        Ok(Matroid { n, kind: MatroidKind::Partition { blocks, caps, block_of }, rank, validated: true })
    }

    /// Explicit family of independent sets, validated as a matroid.
    pub fn explicit(n: usize, independent: &[Vec<usize>]) -> Result<Matroid> {
        let m = Matroid::explicit_unchecked(n, independent)?;
        if n > VALIDATE_CAP {
            return Err(Error::CapExceeded { what: "matroid validation", cap: VALIDATE_CAP, n });
        }
        let report = m.validate_exchange_axiom()?;
        if let Some(w) = report.witness {
            return Err(Error::InvalidMatroid(format!("{:?} fails for A = {:?}, B = {:?}", w.kind, w.s, w.t)));
        }
        Ok(Matroid { validated: true, ..m })
    }

    /// Explicit family without validation. Solvers refuse unvalidated
    /// matroids.
    pub fn explicit_unchecked(n: usize, independent: &[Vec<usize>]) -> Result<Matroid> {
        if n > EXPLICIT_CAP {
            return Err(Error::CapExceeded { what: "explicit matroid", cap: EXPLICIT_CAP, n });
        }
        let mut table = FixedBitSet::with_capacity(1 << n);
        for set in independent {
            let s = Subset::from_indices(n, set.iter().copied())?;
            table.insert(s.to_mask().expect("n <= 20") as usize);
        }
        Ok(Matroid::from_table(n, table, false))
    }

    fn from_table(n: usize, table: FixedBitSet, validated: bool) -> Matroid {
        let rank = table.ones().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        Matroid { n, kind: MatroidKind::Explicit { table }, rank, validated }
    }

    /// Same matroid stored as an explicit table.
    pub fn to_explicit(&self) -> Result<Matroid> {
        if self.n > EXPLICIT_CAP {
            return Err(Error::CapExceeded { what: "explicit matroid", cap: EXPLICIT_CAP, n: self.n });
        }
        let mut table = FixedBitSet::with_capacity(1 << self.n);
        for m in 0..1u64 << self.n {
            if self.independent_mask(m) {
                table.insert(m as usize);
            }
        }
        Ok(Matroid::from_table(self.n, table, self.validated))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    fn check_universe(&self, s: &Subset) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::GroundMismatch { ground: self.n, subset: s.universe() });
        }
        Ok(())
    }

    pub fn is_independent(&self, s: &Subset) -> Result<bool> {
        self.check_universe(s)?;
        Ok(self.independent(s))
    }

    pub(crate) fn independent(&self, s: &Subset) -> bool {
        match &self.kind {
            MatroidKind::Uniform { rank } => s.len() <= *rank,
            MatroidKind::Partition { caps, block_of, .. } => {
                let mut used = vec![0usize; caps.len()];
                s.iter().all(|e| {
                    let b = block_of[e];
                    used[b] += 1;
                    used[b] <= caps[b]
                })
            }
            MatroidKind::Explicit { table } => table.contains(s.to_mask().expect("explicit n <= 20") as usize),
        }
    }

    fn independent_mask(&self, m: u64) -> bool {
        match &self.kind {
            MatroidKind::Explicit { table } => table.contains(m as usize),
            _ => self.independent(&Subset::from_mask(self.n, m)),
        }
    }

    pub fn is_basis(&self, s: &Subset) -> Result<bool> {
        Ok(self.is_independent(s)? && s.len() == self.rank)
    }

    /// Extends an independent set to a basis, adding the smallest feasible
    /// index first.
    pub fn extend_to_basis(&self, s: &Subset) -> Result<Subset> {
        if !self.is_independent(s)? {
            return Err(Error::Dependent);
        }
        let mut b = s.clone();
        for e in 0..self.n {
            if b.len() == self.rank {
                break;
            }
            if !b.contains(e) && self.independent(&b.with(e)) {
                b.insert(e);
            }
        }
        if b.len() != self.rank {
            return Err(Error::Internal("greedy extension stopped short of the rank; oracle is not a matroid".into()));
        }
        Ok(b)
    }

    /// All bases in increasing bitmask order.
    pub fn bases(&self) -> Result<Vec<Subset>> {
        let explicit = matches!(self.kind, MatroidKind::Explicit { .. });
        if !explicit && self.n > ENUMERATE_CAP {
            return Err(Error::CapExceeded { what: "basis enumeration", cap: ENUMERATE_CAP, n: self.n });
        }
        Ok(k_subsets(self.n, self.rank).filter(|&m| self.independent_mask(m)).map(|m| Subset::from_mask(self.n, m)).collect())
    }

    /// Checks that `∅` is independent, that the family is downward closed
    /// and that the exchange axiom holds. With downward closure, exchange
    /// only needs checking for `|B| = |A| + 1`.
    pub fn validate_exchange_axiom(&self) -> Result<CheckReport> {
        let n = self.n;
        if n > VALIDATE_CAP {
            return Err(Error::CapExceeded { what: "matroid validation", cap: VALIDATE_CAP, n });
        }
        let mode = Mode::Exhaustive;
        let property = Property::ExchangeAxiom;
        let total = 1u64 << n;
        let ind: Vec<bool> = (0..total).map(|m| self.independent_mask(m)).collect();
        if !ind[0] {
            let w = ViolationWitness::sets(ViolationKind::ExchangeAxiom, Subset::empty(n), None);
            return Ok(CheckReport::new(property, mode, 1, Some(w)));
        }
        let not_closed = (1..total).find_map(|m| {
            if !ind[m as usize] {
                return None;
            }
            (0..n).find(|&e| m >> e & 1 == 1 && !ind[(m & !(1 << e)) as usize]).map(|e| (m, m & !(1 << e)))
        });
        if let Some((m, sub)) = not_closed {
            // independent m has a dependent subset
            let w = ViolationWitness::sets(ViolationKind::ExchangeAxiom, Subset::from_mask(n, sub), Some(Subset::from_mask(n, m)));
            return Ok(CheckReport::new(property, mode, total, Some(w)));
        }
        let hit = (0..total).into_par_iter().filter(|&a| ind[a as usize]).find_map_first(|a| {
            let size = a.count_ones() as usize + 1;
            k_subsets(n, size)
                .find(|&b| {
                    ind[b as usize] && (b & !a) != 0 && {
                        let mut extra = b & !a;
                        let mut ok = false;
                        while extra != 0 {
                            let e = extra.trailing_zeros();
                            if ind[(a | 1 << e) as usize] {
                                ok = true;
                                break;
                            }
                            extra &= extra - 1;
                        }
                        !ok
                    }
                })
                .map(|b| (a, b))
        });
        let checked = ind.iter().filter(|&&x| x).count() as u64;
        Ok(match hit {
            Some((a, b)) => {
                let w = ViolationWitness::sets(ViolationKind::ExchangeAxiom, Subset::from_mask(n, a), Some(Subset::from_mask(n, b)));
                CheckReport::new(property, mode, checked, Some(w))
            }
            None => CheckReport::new(property, mode, checked, None),
        })
    }

    /// Bijection `g: X∖Y → Y∖X` with `X ∪ {g(x)} ∖ {x}` independent for every
    /// `x`, found by augmenting-path matching on the exchange graph.
    pub fn brualdi_bijection(&self, x: &Subset, y: &Subset) -> Result<ExchangeMap> {
        if !self.validated {
            return Err(Error::InvalidMatroid("matroid has not been validated".into()));
        }
        if !self.is_basis(x)? || !self.is_basis(y)? {
            return Err(Error::NotBasis);
        }
        let left = x.difference(y).to_vec();
        let right = y.difference(x).to_vec();
        let adj: Vec<Vec<usize>> =
            left.iter().map(|&l| (0..right.len()).filter(|&r| self.independent(&x.swap(right[r], l))).collect()).collect();
        let matched = max_bipartite_matching(&adj, right.len());
        let mut pairs = Vec::with_capacity(left.len());
        for (i, m) in matched.iter().enumerate() {
            match m {
                Some(r) => pairs.push((left[i], right[*r])),
                None => return Err(Error::Internal("exchange graph has no perfect matching; oracle is inconsistent".into())),
            }
        }
        let map = ExchangeMap { x: x.clone(), y: y.clone(), pairs };
        if !map.is_valid(self) {
            return Err(Error::Internal("matched exchange is not independent".into()));
        }
        Ok(map)
    }
}

/// Exchange bijection between two bases, restricted to the elements where
/// they differ.
#[derive(Debug, Clone, Serialize)]
pub struct ExchangeMap {
    pub x: Subset,
    pub y: Subset,
    /// `(x, g(x))`, in increasing order of `x`.
    pub pairs: Vec<(usize, usize)>,
}

impl ExchangeMap {
    pub fn get(&self, x: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == x).map(|p| p.1)
    }

    /// Bijectivity onto `Y∖X` plus independence of every single exchange.
    pub fn is_valid(&self, m: &Matroid) -> bool {
        let mut dom: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
        let mut img: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        dom.sort_unstable();
        img.sort_unstable();
        dom == self.x.difference(&self.y).to_vec()
            && img == self.y.difference(&self.x).to_vec()
            && self.pairs.iter().all(|&(a, b)| m.independent(&self.x.swap(b, a)))
    }
}

/// Kuhn's augmenting-path matching. Left vertices are processed in index
/// order and neighbours tried in list order. Returns the right partner of
/// each left vertex.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| augment(o, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner: Vec<Option<usize>> = vec![None; right];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(l, adj, &mut seen, &mut owner);
    }
    let mut partner = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            partner[*l] = Some(r);
        }
    }
    partner
}

pub mod random {
    //! Seeded small matroids for tests and benchmarks.

    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::Matroid;
    use crate::ground::Subset;

    /// Column matroid of `n` random vectors in GF(2)^dim, stored explicitly.
    pub fn binary<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Matroid {
        assert!(n <= super::VALIDATE_CAP && dim <= 63);
        let vecs: Vec<u64> = (0..n).map(|_| rng.gen_range(1..1u64 << dim)).collect();
        let sets: Vec<Vec<usize>> =
            (0..1u64 << n).filter(|&m| gf2_independent(&vecs, m)).map(|m| Subset::from_mask(n, m).to_vec()).collect();
        Matroid::explicit(n, &sets).expect("linear matroids satisfy the exchange axiom")
    }

    fn gf2_independent(vecs: &[u64], mask: u64) -> bool {
        let mut basis = [0u64; 64];
        let mut m = mask;
        while m != 0 {
            let mut v = vecs[m.trailing_zeros() as usize];
            m &= m - 1;
            while v != 0 {
                let top = 63 - v.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = v;
                    break;
                }
                v ^= basis[top];
            }
            if v == 0 {
                return false;
            }
        }
        true
    }

    /// Random partition of `0..n` into `blocks` non-empty blocks with caps in
    /// `1..=block size`.
    pub fn partition<R: Rng>(rng: &mut R, n: usize, blocks: usize) -> Matroid {
        let blocks = blocks.clamp(1, n.max(1));
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut parts = vec![Vec::new(); blocks];
        for (k, e) in order.into_iter().enumerate() {
            let b = if k < blocks { k } else { rng.gen_range(0..blocks) };
            parts[b].push(e);
        }
        for p in &mut parts {
            p.sort_unstable();
        }
        let caps = parts.iter().map(|p| rng.gen_range(1..=p.len().max(1))).collect();
        Matroid::partition(n, parts, caps).expect("generated blocks partition the ground set")
    }
}
