//! Sparse row echelon spans over ℚ.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

/// A coordinate: (module component, exponent vector).
pub type Key = (usize, Vec<u32>);
pub type Vector = BTreeMap<Key, BigRational>;

fn axpy(v: &mut Vector, c: &BigRational, w: &Vector) {
    for (k, x) in w {
        let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Echelon basis keyed by pivot; each stored row has pivot coefficient 1 and
/// its pivot is its smallest key.
#[derive(Clone, Debug, Default)]
pub struct Space {
    rows: BTreeMap<Key, Vector>,
}

impl Space {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces v against the basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        loop {
            let hit = v.iter().find(|(k, _)| self.rows.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone()));
            match hit {
                Some((k, c)) => axpy(&mut v, &-c, &self.rows[&k]),
                None => return v,
            }
        }
    }

    /// Adds v; returns whether the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let r = self.reduce(&v);
        let Some((k, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let r: Vector = r.into_iter().map(|(k, x)| (k, x / &c)).collect();
        self.rows.insert(k, r);
        true
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn same_span(&self, other: &Space) -> bool {
        self.rank() == other.rank() && other.rows.values().all(|v| self.contains(v))
    }
}

/// Span of the combinations Σ c_i sources_i with Σ c_i images_i = 0.
pub fn kernel_combinations(images: &[Vector], sources: &[Vector]) -> Space {
    // Row-reduce pairs (image, source); a pair whose image reduces to zero
    // carries a kernel element in its source half.
    let mut pivots: BTreeMap<Key, (Vector, Vector)> = BTreeMap::new();
    let mut kernel = Space::new();
    for (img, src) in images.iter().zip(sources) {
        let (mut a, mut b) = (img.clone(), src.clone());
        loop {
            let hit = a.iter().find(|(k, _)| pivots.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = hit else { break };
            let (pa, pb) = &pivots[&k];
            axpy(&mut a, &-c.clone(), pa);
            axpy(&mut b, &-c, pb);
        }
        match a.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            None => {
                kernel.insert(b);
            }
            Some((k, c)) => {
                let a = a.into_iter().map(|(k, x)| (k, x / &c)).collect();
                let b = b.into_iter().map(|(k, x)| (k, x / &c)).collect();
                pivots.insert(k, (a, b));
            }
        }
    }
    kernel
}
