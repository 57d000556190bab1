//! Buchberger's algorithm for submodules of free modules S^r over a
//! polynomial ring, with a position-over-term order (position 0 largest).
//!
//! Ideals are the rank-one case.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};
use super::scalar::Scalar;
use super::Budget;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

/// Element of S^r, terms sorted by decreasing position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

pub fn cmp_pot(ring: &PolyRing, pa: usize, ma: &Monomial, pb: usize, mb: &Monomial) -> Ordering {
    if pa != pb {
        return pb.cmp(&pa);
    }
    ring.cmp(ma, mb)
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Collects the entries `entries[i]` placed at positions `offset + i`.
    pub fn from_polys<'a>(entries: impl IntoIterator<Item = &'a Poly>, offset: usize) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in entries.into_iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push(Term { pos: offset + i, mono: m.clone(), coeff: c.clone() });
            }
        }
        Vector { terms }
    }

    /// Splits back into one polynomial per position in `0..rank`.
    pub fn to_polys(&self, rank: usize) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); rank];
        for t in &self.terms {
            out[t.pos].terms.push((t.mono.clone(), t.coeff.clone()));
        }
        out
    }

    pub fn degree(&self, ring: &PolyRing, shifts: &[i64]) -> i64 {
        self.terms
            .iter()
            .map(|t| ring.mono_degree(&t.mono) + shifts[t.pos])
            .max()
            .unwrap_or(0)
    }

    /// `a + c·m·b`.
    pub fn add_scaled(ring: &PolyRing, a: &Vector, c: &Scalar, m: &Monomial, b: &Vector) -> Vector {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.terms.len() || j < b.terms.len() {
            if j == b.terms.len() {
                out.extend_from_slice(&a.terms[i..]);
                break;
            }
            let bt = &b.terms[j];
            let bm = bt.mono.mul(m);
            if i == a.terms.len() {
                out.push(Term { pos: bt.pos, mono: bm, coeff: bt.coeff.mul(c) });
                j += 1;
                continue;
            }
            let at = &a.terms[i];
            match cmp_pot(ring, at.pos, &at.mono, bt.pos, &bm) {
                Ordering::Greater => {
                    out.push(at.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { pos: bt.pos, mono: bm, coeff: bt.coeff.mul(c) });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = at.coeff.add(&bt.coeff.mul(c));
                    if !s.is_zero() {
                        out.push(Term { pos: at.pos, mono: bm, coeff: s });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vector { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { pos: t.pos, mono: t.mono.clone(), coeff: t.coeff.mul(c) })
                .collect(),
        }
    }

    pub fn monic(&self) -> Vector {
        match self.leading() {
            None => Vector::zero(),
            Some(t) => self.scale(&t.coeff.inv().unwrap()),
        }
    }

    /// Restores the canonical term order after arbitrary construction.
    pub fn normalize(ring: &PolyRing, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| cmp_pot(ring, b.pos, &b.mono, a.pos, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => l.coeff = l.coeff.add(&t.coeff),
                _ => out.push(t),
            }
            if out.last().is_some_and(|l| l.coeff.is_zero()) {
                out.pop();
            }
        }
        Vector { terms: out }
    }
}

/// Step counter shared by one computation.
pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    steps: u64,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Meter { budget, steps: 0 }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(Error::Budget(format!("more than {} reduction steps", self.budget.max_steps)));
        }
        Ok(())
    }
}

fn find_reducer(basis: &[Vector], pos: usize, mono: &Monomial) -> Option<usize> {
    basis.iter().position(|g| {
        let l = g.leading().unwrap();
        l.pos == pos && l.mono.divides(mono)
    })
}

/// Reduces only the leading term until it is not divisible by any leading term
/// of `basis` (which must consist of monic vectors).
fn top_reduce(ring: &PolyRing, mut v: Vector, basis: &[Vector], meter: &mut Meter) -> Result<Vector> {
    loop {
        let Some(lt) = v.leading() else { return Ok(v) };
        let Some(k) = find_reducer(basis, lt.pos, &lt.mono) else { return Ok(v) };
        meter.tick()?;
        let g = &basis[k];
        let q = lt.mono.div(&g.leading().unwrap().mono);
        let c = lt.coeff.neg();
        v = Vector::add_scaled(ring, &v, &c, &q, g);
    }
}

/// Full normal form of `v` against monic `basis`.
pub fn reduce(ring: &PolyRing, v: &Vector, basis: &[Vector]) -> Vector {
    let unlimited = Budget::unlimited();
    let mut meter = Meter::new(&unlimited);
    reduce_metered(ring, v.clone(), basis, &mut meter).expect("unlimited budget")
}

pub(crate) fn reduce_metered(ring: &PolyRing, mut v: Vector, basis: &[Vector], meter: &mut Meter) -> Result<Vector> {
    let mut done: Vec<Term> = Vec::new();
    loop {
        v = top_reduce(ring, v, basis, meter)?;
        if v.terms.is_empty() {
            return Ok(Vector { terms: done });
        }
        done.push(v.terms.remove(0));
    }
}

/// Reduced, monic Gröbner basis of the submodule spanned by `gens`, sorted by
/// decreasing leading term. `shifts[i]` is the degree of the basis vector at
/// position i; it drives the sugar strategy and the degree budget.
pub fn groebner(ring: &PolyRing, gens: &[Vector], shifts: &[i64], budget: &Budget) -> Result<Vec<Vector>> {
    let mut meter = Meter::new(budget);
    let rank_one = gens.iter().all(|g| g.terms.iter().all(|t| t.pos == 0));
    let mut basis: Vec<Vector> = Vec::new();
    let mut sugar: Vec<i64> = Vec::new();
    // (sugar, lcm degree, j, i) keeps selection deterministic.
    let mut queue: BTreeSet<(i64, i64, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let mut inputs: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| {
        let la = a.leading().unwrap();
        let lb = b.leading().unwrap();
        cmp_pot(ring, la.pos, &la.mono, lb.pos, &lb.mono)
    });

    let push = |v: Vector,
                    s: i64,
                    basis: &mut Vec<Vector>,
                    sugar: &mut Vec<i64>,
                    queue: &mut BTreeSet<(i64, i64, usize, usize)>,
                    pending: &mut BTreeSet<(usize, usize)>| {
        let v = v.monic();
        let lv = v.leading().unwrap().clone();
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading().unwrap();
            if lg.pos != lv.pos {
                continue;
            }
            let l = lg.mono.lcm(&lv.mono);
            let si = sugar[i] + ring.mono_degree(&l) - ring.mono_degree(&lg.mono);
            let sj = s + ring.mono_degree(&l) - ring.mono_degree(&lv.mono);
            let ldeg = ring.mono_degree(&l) + shifts[lv.pos];
            queue.insert((si.max(sj), ldeg, j, i));
            pending.insert((i, j));
        }
        basis.push(v);
        sugar.push(s);
    };

    for g in inputs {
        let s = g.degree(ring, shifts);
        let r = top_reduce(ring, g, &basis, &mut meter)?;
        if !r.is_zero() {
            push(r, s, &mut basis, &mut sugar, &mut queue, &mut pending);
        }
    }

    while let Some(&key) = queue.iter().next() {
        queue.remove(&key);
        let (s, _, j, i) = key;
        pending.remove(&(i, j));
        if s > budget.max_degree {
            return Err(Error::Budget(format!("Groebner basis needs degree above {}", budget.max_degree)));
        }
        let li = basis[i].leading().unwrap().clone();
        let lj = basis[j].leading().unwrap().clone();
        if rank_one && li.mono.coprime(&lj.mono) {
            continue;
        }
        let l = li.mono.lcm(&lj.mono);
        // Chain criterion.
        let chain = basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let lk = g.leading().unwrap();
            lk.pos == li.pos
                && lk.mono.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        meter.tick()?;
        let a = Vector::add_scaled(ring, &Vector::zero(), &ring.field.one(), &l.div(&li.mono), &basis[i]);
        let spoly = Vector::add_scaled(ring, &a, &ring.field.from_i64(-1), &l.div(&lj.mono), &basis[j]);
        let r = top_reduce(ring, spoly, &basis, &mut meter)?;
        if !r.is_zero() {
            push(r, s, &mut basis, &mut sugar, &mut queue, &mut pending);
        }
    }

    // Minimize, then interreduce.
    let mut keep: Vec<Vector> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            if o == k {
                return false;
            }
            let lh = h.leading().unwrap();
            lh.pos == lg.pos && lh.mono.divides(&lg.mono) && (lh.mono != lg.mono || o < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let head = Vector { terms: vec![keep[k].terms[0].clone()] };
        let tail = Vector { terms: keep[k].terms[1..].to_vec() };
        let others: Vec<Vector> = keep.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, g)| g.clone()).collect();
        let rt = reduce_metered(ring, tail, &others, &mut meter)?;
        let mut terms = head.terms;
        terms.extend(rt.terms);
        reduced.push(Vector { terms });
    }
    reduced.sort_by(|a, b| {
        let la = a.leading().unwrap();
        let lb = b.leading().unwrap();
        cmp_pot(ring, lb.pos, &lb.mono, la.pos, &la.mono)
    });
    Ok(reduced)
}

/// Reduced Gröbner basis of an ideal of S.
pub fn ideal_groebner(ring: &PolyRing, gens: &[Poly], budget: &Budget) -> Result<Vec<Poly>> {
    let vs: Vec<Vector> = gens.iter().map(|p| Vector::from_polys([p], 0)).collect();
    let gb = groebner(ring, &vs, &[0], budget)?;
    Ok(gb.into_iter().map(|v| v.to_polys(1).pop().unwrap()).collect())
}

/// Normal form of a polynomial against a Gröbner basis of an ideal.
pub fn poly_normal_form(ring: &PolyRing, f: &Poly, gb: &[Poly]) -> Poly {
    if gb.is_empty() || f.is_zero() {
        return f.clone();
    }
    let mut done = Vec::new();
    let mut v = f.clone();
    while let Some((m, c)) = v.terms.first().cloned() {
        match gb.iter().find(|g| g.terms[0].0.divides(&m)) {
            Some(g) => {
                let q = m.div(&g.terms[0].0);
                let coef = c.neg().div(&g.terms[0].1);
                v = ring.add_scaled(&v, &coef, &q, g);
            }
            None => {
                done.push(v.terms.remove(0));
            }
        }
    }
    Poly { terms: done }
}

#[cfg(test)]
mod tests {
    use super::super::scalar::Field;
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(Field::Rationals, vec!["x".into(), "y".into()]).unwrap()
    }

    fn gb(r: &PolyRing, gens: &[&str]) -> Vec<String> {
        let ps: Vec<Poly> = gens.iter().map(|g| r.parse(g).unwrap()).collect();
        ideal_groebner(r, &ps, &Budget::default()).unwrap().iter().map(|p| r.format(p)).collect()
    }

    #[test]
    fn single_monomial_is_its_own_basis() {
        assert_eq!(gb(&ring(), &["x*y"]), vec!["x*y"]);
        assert!(gb(&ring(), &[]).is_empty());
    }

    #[test]
    fn basis_of_x2_minus_xy_and_xy() {
        assert_eq!(gb(&ring(), &["x^2 - y*x", "x*y"]), vec!["x^2", "x*y"]);
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = PolyRing::new(Field::Rationals, vec!["x".into(), "y".into(), "z".into(), "w".into()]).unwrap();
        let g = gb(&r, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]);
        assert_eq!(g, vec!["y^2 - x*z", "y*z - x*w", "z^2 - y*w"]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let g = vec![r.parse("x*y").unwrap()];
        let nf = |s: &str| r.format(&poly_normal_form(&r, &r.parse(s).unwrap(), &g));
        assert_eq!(nf("x^2*y"), "0");
        assert_eq!(nf("x^2 + y^2"), "x^2 + y^2");
        assert_eq!(nf("(x - y)*(x + y)"), "x^2 - y^2");
    }

    #[test]
    fn degree_budget_is_enforced() {
        let r = ring();
        let ps = vec![r.parse("x^3 - y^2").unwrap(), r.parse("x^2*y - x").unwrap()];
        let tight = Budget { max_degree: 3, ..Budget::default() };
        assert!(matches!(ideal_groebner(&r, &ps, &tight), Err(Error::Budget(_))));
    }
}
