//! JSON file formats for lattices, quantales, semigroups, relations and
//! endomaps.

use std::{fs, path::Path};

use quantale::{
    phase::{BinaryRelation, FiniteSemigroup},
    EndoMap, Elem, FiniteLattice, FrobeniusQuantale, LatticeSpec, Quantale,
};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub n: usize,
    pub covers: Vec<(Elem, Elem)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantaleFile {
    pub lattice: LatticeFile,
    pub mult: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lneg: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rneg: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SemigroupFile {
    pub n: usize,
    pub op: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationFile {
    pub rel: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndoMapFile {
    pub image: Vec<Elem>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

impl LatticeFile {
    pub fn of(l: &FiniteLattice) -> Self {
        LatticeFile {
            n: l.size(),
            covers: l.covers(),
            labels: l.labels().to_vec(),
        }
    }

    pub fn build(&self) -> quantale::Result<FiniteLattice> {
        FiniteLattice::from_covers(self.n, &self.covers)?.with_labels(self.labels.clone())
    }
}

impl QuantaleFile {
    pub fn of(q: &Quantale) -> Self {
        QuantaleFile {
            lattice: LatticeFile::of(q.lattice()),
            mult: q.mult_rows(),
            lneg: None,
            rneg: None,
        }
    }

    pub fn of_frobenius(f: &FrobeniusQuantale) -> Self {
        QuantaleFile {
            lneg: Some(f.lneg().image().to_vec()),
            rneg: Some(f.rneg().image().to_vec()),
            ..QuantaleFile::of(f.quantale())
        }
    }
}

/// A lattice given either as a JSON file or as a named family such as
/// `M3`, `chain:4` or `product(c2,b2)`.
pub fn load_lattice(arg: &str) -> Result<FiniteLattice, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let file: LatticeFile = read_json(path)?;
        return file.build().map_err(CliError::Invalid);
    }
    arg.parse::<LatticeSpec>()
        .map(|spec| spec.build())
        .map_err(|e| CliError::Parse(format!("{arg}: not a file and not a lattice name ({})", e.0)))
}

pub fn load_quantale_file(path: &Path) -> Result<QuantaleFile, CliError> {
    read_json(path)
}

/// Negations from a quantale file, as endomaps of `l`.
pub fn negations(file: &QuantaleFile, l: &FiniteLattice) -> Result<(EndoMap, EndoMap), CliError> {
    match (&file.lneg, &file.rneg) {
        (Some(a), Some(b)) => Ok((
            EndoMap::new(l, a.clone()).map_err(CliError::Invalid)?,
            EndoMap::new(l, b.clone()).map_err(CliError::Invalid)?,
        )),
        _ => Err(CliError::Parse("quantale file needs both \"lneg\" and \"rneg\"".into())),
    }
}

pub fn load_semigroup(path: &Path) -> Result<FiniteSemigroup, CliError> {
    let file: SemigroupFile = read_json(path)?;
    FiniteSemigroup::new(file.n, &file.op).map_err(CliError::Invalid)
}

pub fn load_relation(path: &Path) -> Result<BinaryRelation, CliError> {
    let file: RelationFile = read_json(path)?;
    BinaryRelation::new(&file.rel).map_err(CliError::Invalid)
}

pub fn load_endomap(path: &Path, l: &FiniteLattice) -> Result<EndoMap, CliError> {
    let file: EndoMapFile = read_json(path)?;
    EndoMap::new(l, file.image).map_err(CliError::Invalid)
}
