//! File formats: JSON for complexes, actions, graphs, and moduli, plain
//! text for presentations (one relator per line, letters a1..am, inverses
//! A1..Am).

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::action::GroupAction;
use crate::banach::CurveModulus;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::randgroup::Presentation;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn parse_err(path: &Path, reason: impl ToString) -> Error {
    Error::Parse { path: path.display().to_string(), reason: reason.to_string() }
}

#[derive(Deserialize)]
struct ComplexFile {
    top_simplices: Vec<Vec<i64>>,
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = read(path)?;
    let file: ComplexFile =
        serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    SimplicialComplex::build(&file.top_simplices)
}

#[derive(Deserialize)]
struct ActionFile {
    generators: Vec<Vec<u32>>,
}

/// Load a generator file. The degree is the generator length; an empty
/// generator list yields the trivial action on `default_degree` vertices.
pub fn load_action(path: &Path, default_degree: u32) -> Result<GroupAction> {
    let text = read(path)?;
    let file: ActionFile = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    match file.generators.first() {
        None => Ok(GroupAction::trivial(default_degree)),
        Some(g) => GroupAction::from_generators(g.len() as u32, file.generators),
    }
}

#[derive(Deserialize)]
struct GraphFile {
    edges: Vec<(u32, u32, f64)>,
}

pub fn load_graph(path: &Path) -> Result<WeightedGraph> {
    let text = read(path)?;
    let file: GraphFile = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for (u, v, w) in file.edges {
        let w = num::BigRational::from_float(w)
            .ok_or_else(|| parse_err(path, format!("edge ({u},{v}) has non-finite weight {w}")))?;
        edges.push((u, v, w));
    }
    WeightedGraph::from_edges(edges)
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ModulusFile {
    Hilbert,
    Power { theta: f64 },
    Table { points: Vec<(f64, f64)> },
}

pub fn load_modulus(path: &Path) -> Result<CurveModulus> {
    let text = read(path)?;
    let file: ModulusFile = serde_json::from_str(&text).map_err(|e| parse_err(path, e))?;
    match file {
        ModulusFile::Hilbert => Ok(CurveModulus::Hilbert),
        ModulusFile::Power { theta } => CurveModulus::power(theta),
        ModulusFile::Table { points } => CurveModulus::table(points),
    }
}

pub fn load_presentation(path: &Path) -> Result<Presentation> {
    let text = read(path)?;
    Presentation::parse(&text)
}
