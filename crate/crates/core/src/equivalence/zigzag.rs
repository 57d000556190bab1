//! Zigzags of quasi-isomorphisms witnessing isomorphisms in the derived
//! category.

use serde::Serialize;

use crate::complex::homology::QisSummary;
use crate::complex::{is_quasi_isomorphism, ChainMap, Complex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// nodes[i] → nodes[i+1]
    Forward,
    /// nodes[i+1] → nodes[i]
    Backward,
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub direction: Direction,
    pub map: ChainMap,
    /// Set by [`ZigzagCertificate::verify`].
    pub verdict: Option<bool>,
    pub homology: Vec<QisSummary>,
}

#[derive(Clone, Debug)]
pub struct ZigzagCertificate {
    pub nodes: Vec<Complex>,
    pub arrows: Vec<Arrow>,
}

impl ZigzagCertificate {
    pub fn start(x: &Complex) -> Self {
        ZigzagCertificate { nodes: vec![x.clone()], arrows: vec![] }
    }

    /// A certificate with no arrows: X is isomorphic to itself.
    pub fn trivial(x: &Complex) -> Self {
        Self::start(x)
    }

    pub fn source(&self) -> &Complex {
        &self.nodes[0]
    }

    pub fn target(&self) -> &Complex {
        self.nodes.last().unwrap()
    }

    pub fn push(&mut self, direction: Direction, node: &Complex, map: ChainMap) -> Result<()> {
        let last = self.target();
        let ok = match direction {
            Direction::Forward => map.source == *last && map.target == *node,
            Direction::Backward => map.source == *node && map.target == *last,
        };
        if !ok {
            return Err(Error::Invariant("zigzag arrow does not connect consecutive nodes".into()));
        }
        self.nodes.push(node.clone());
        self.arrows.push(Arrow { direction, map, verdict: None, homology: vec![] });
        Ok(())
    }

    pub fn append(&mut self, other: &ZigzagCertificate) -> Result<()> {
        if other.source() != self.target() {
            return Err(Error::Invariant("zigzags do not share an endpoint".into()));
        }
        self.nodes.extend(other.nodes[1..].iter().cloned());
        self.arrows.extend(other.arrows.iter().cloned());
        Ok(())
    }

    pub fn reversed(&self) -> ZigzagCertificate {
        let nodes = self.nodes.iter().rev().cloned().collect();
        let arrows = self
            .arrows
            .iter()
            .rev()
            .map(|a| Arrow {
                direction: match a.direction {
                    Direction::Forward => Direction::Backward,
                    Direction::Backward => Direction::Forward,
                },
                ..a.clone()
            })
            .collect();
        ZigzagCertificate { nodes, arrows }
    }

    /// Re-checks every arrow from scratch and records the verdicts.
    pub fn verify(&mut self) -> Result<bool> {
        let mut all = true;
        for (i, a) in self.arrows.iter_mut().enumerate() {
            let (s, t) = match a.direction {
                Direction::Forward => (&self.nodes[i], &self.nodes[i + 1]),
                Direction::Backward => (&self.nodes[i + 1], &self.nodes[i]),
            };
            let connected = a.map.source == *s && a.map.target == *t;
            let rep = is_quasi_isomorphism(&a.map)?;
            let ok = connected && rep.verdict;
            a.verdict = Some(ok);
            a.homology = rep.summary();
            all &= ok;
        }
        Ok(all)
    }
}
