//! Tightness study on random stick knots: the certified insertion count next
//! to the level from which the sampled curves' determinant settles on the
//! stick knot's.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use stickknot::certificate::required_iterations;
use stickknot::diagnostics::{diagnose_iteration, polygon_determinant, sample_floor};
use stickknot::random::random_polyknot;
use stickknot::{Error, PolyKnot};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub count: usize,
    pub sticks: usize,
    pub seed: u64,
    pub jmax: u32,
    pub epsilon: f64,
}

/// One CSV row. Empty cells mean the quantity could not be computed for this
/// instance (degenerate certificate or no generic projection).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub instance_id: usize,
    pub seed: u64,
    pub n: usize,
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub lambda: f64,
    pub delta: Option<f64>,
    pub m1: Option<u32>,
    pub m2t: Option<u32>,
    pub m2a: Option<u32>,
    pub m_theory: Option<u32>,
    pub determinant: Option<u64>,
    pub m_empirical: Option<u32>,
    pub gap: Option<i64>,
}

/// Smallest level from which every determinant up to the last equals
/// `target`.
pub fn settled_level(determinants: &[u64], target: u64) -> Option<u32> {
    if determinants.last() != Some(&target) {
        return None;
    }
    let unsettled = determinants.iter().rposition(|&d| d != target);
    Some(unsettled.map_or(0, |i| i as u32 + 1))
}

fn empirical(p: &PolyKnot, jmax: u32, seed: u64) -> Result<(u64, Option<u32>), Error> {
    let target = polygon_determinant(p, seed)?;
    let dets = (0..=jmax)
        .map(|j| diagnose_iteration(p, j, sample_floor(p, j), seed).map(|r| r.determinant))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((target, settled_level(&dets, target)))
}

pub fn run_instance(config: &SweepConfig, instance_id: usize) -> Result<SweepRecord, Error> {
    let seed = config.seed + instance_id as u64;
    let p = random_polyknot(config.sticks, seed)?;
    let theory = required_iterations(&p, config.epsilon).ok();
    let (determinant, m_empirical) = match empirical(&p, config.jmax, seed) {
        Ok((d, m)) => (Some(d), m),
        Err(_) => (None, None),
    };
    let m_theory = theory.map(|b| b.m);
    Ok(SweepRecord {
        instance_id,
        seed,
        n: p.len(),
        omega1: theory.map(|b| b.inputs.omega1),
        omega2: theory.map(|b| b.inputs.omega2),
        lambda: p.min_edge_length(),
        delta: theory.map(|b| b.inputs.delta),
        m1: theory.map(|b| b.m1),
        m2t: theory.map(|b| b.m2t),
        m2a: theory.map(|b| b.m2a),
        m_theory,
        determinant,
        m_empirical,
        gap: m_theory
            .zip(m_empirical)
            .map(|(t, e)| t as i64 - e as i64),
    })
}

/// Runs every instance, concurrently, and returns the records ordered by
/// instance id.
pub fn run(config: &SweepConfig) -> Result<Vec<SweepRecord>, Error> {
    (0..config.count)
        .into_par_iter()
        .map(|id| run_instance(config, id))
        .collect()
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
