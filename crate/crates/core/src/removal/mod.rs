//! Removing coincidences by homotopy.

mod fork;
mod push_off;
mod simple;
mod window;

pub use fork::{fork_maneuver, route_for, LEADING_TIMES, SIDE_DEPTH, TRAILING_TIMES};
pub use push_off::push_off;
pub use simple::{deform_to_constants, rotate_half, rotation_step};
pub use window::{normal_form, LocalWindow};

use crate::certify::{maps_homotopic, nielsen_circle};
use crate::error::{Error, Result};
use crate::graph::{classify, GraphClass};
use crate::plmap::{coincidences, general_position, PLMap, Transversality};
use crate::steps::HomotopyStep;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    CoincidenceFree,
    /// Circle self-maps whose Nielsen number is positive.
    CircleObstruction(u64),
}

#[derive(Debug, Clone)]
pub struct RemovalReport {
    pub f: PLMap,
    pub g: PLMap,
    pub steps: Vec<HomotopyStep>,
    pub outcome: Outcome,
}

impl RemovalReport {
    pub fn summary(&self) -> String {
        match self.outcome {
            Outcome::CoincidenceFree => format!("coincidence-free after {} steps", self.steps.len()),
            Outcome::CircleObstruction(n) => format!("circle obstruction: N = {n}"),
        }
    }
}

/// Safety net on the number of local moves; each move strictly lowers a
/// finite potential, so this is never reached on valid input.
const MAX_MOVES: usize = 100_000;

fn crossings(f: &PLMap, g: &PLMap) -> Result<usize> {
    Ok(coincidences(f, g)?.iter().filter(|c| c.transversality == Transversality::Crossing).count())
}

fn remove_branched(f: &PLMap, g: &PLMap) -> Result<RemovalReport> {
    let (mut f, mut g, mut steps) = general_position(f, g)?;
    for _ in 0..MAX_MOVES {
        let cs = coincidences(&f, &g)?;
        let Some(c) = cs.first() else {
            return Ok(RemovalReport { f, g, steps, outcome: Outcome::CoincidenceFree });
        };
        let (f2, g2, step) = if c.transversality == Transversality::Crossing {
            let before = cs.iter().filter(|c| c.transversality == Transversality::Crossing).count();
            let (w, _) = normal_form(&f, &g, c)?;
            let route = route_for(f.codomain(), &c.value)?;
            let out = fork_maneuver(&f, &g, &w, &route)?;
            assert!(crossings(&out.0, &out.1)? < before, "fork maneuver must remove a crossing");
            out
        } else {
            push_off(&f, &g, c)?
        };
        f = f2;
        g = g2;
        steps.push(step);
    }
    Err(Error::Precondition("coincidence removal did not terminate".into()))
}

fn remove_circle(f: &PLMap, g: &PLMap) -> Result<RemovalReport> {
    if classify(f.domain()) == GraphClass::Circle {
        let n = nielsen_circle(f, g)?;
        if n > 0 {
            return Ok(RemovalReport { f: f.clone(), g: g.clone(), steps: Vec::new(), outcome: Outcome::CircleObstruction(n) });
        }
    } else if !maps_homotopic(f, g) {
        return Err(Error::Unsupported(
            "minimal coincidences of non-homotopic maps from a non-circle domain into a circle".into(),
        ));
    }
    if matches!(coincidences(f, g), Ok(cs) if cs.is_empty()) {
        return Ok(RemovalReport { f: f.clone(), g: g.clone(), steps: Vec::new(), outcome: Outcome::CoincidenceFree });
    }
    let (f2, g2, step) = rotation_step(f, g)?;
    Ok(RemovalReport { f: f2, g: g2, steps: vec![step], outcome: Outcome::CoincidenceFree })
}

/// Deforms `f` and `g` by homotopy until they have no coincidence, or
/// reports the circle obstruction.
pub fn remove_all(f: &PLMap, g: &PLMap) -> Result<RemovalReport> {
    if !f.same_graphs(g) {
        return Err(Error::GraphMismatch);
    }
    match classify(f.codomain()) {
        GraphClass::Interval => {
            let (f2, g2, step) = deform_to_constants(f, g)?;
            Ok(RemovalReport { f: f2, g: g2, steps: vec![step], outcome: Outcome::CoincidenceFree })
        }
        GraphClass::Circle => remove_circle(f, g),
        GraphClass::Branched => remove_branched(f, g),
    }
}
