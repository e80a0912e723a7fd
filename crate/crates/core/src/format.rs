//! JSON file formats for algebras and modules.
//!
//! Field elements are written as integers over a prime field and as
//! coefficient arrays (constant term first) over extension fields; both
//! spellings are accepted on input.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::lie::{Element, RestrictedLieAlgebra};
use crate::matrix::Matrix;
use crate::u0rep::RepModule;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Poly(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u32,
    #[serde(default = "prime_field_spec")]
    pub field: FieldSpec,
    pub basis: Vec<String>,
    #[serde(default)]
    pub bracket: BTreeMap<String, Vec<Coefficient>>,
    #[serde(default)]
    pub pmap: BTreeMap<String, Vec<Coefficient>>,
}

fn prime_field_spec() -> FieldSpec {
    FieldSpec { k: 1, modulus: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AlgebraFile),
    /// Path to an algebra file, relative to the module file.
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    pub dim: usize,
    /// One matrix per basis element of the algebra, as a list of rows.
    pub actions: Vec<Vec<Vec<Coefficient>>>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn encode(f: &Field, c: Fe) -> Coefficient {
    if f.is_prime_field() {
        Coefficient::Int(c as i64)
    } else {
        let mut d = f.digits(c);
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        Coefficient::Poly(d)
    }
}

fn decode(f: &Field, c: &Coefficient) -> Result<Fe> {
    match c {
        Coefficient::Int(n) => Ok(f.from_int(*n)),
        Coefficient::Poly(d) => f.from_digits(d),
    }
}

fn decode_vec(f: &Field, v: &[Coefficient], n: usize, what: &str) -> Result<Element> {
    if v.len() != n {
        return Err(format_err(format!("{what}: expected {n} coefficients, found {}", v.len())));
    }
    v.iter().map(|c| decode(f, c)).collect()
}

fn parse_index(s: &str, n: usize) -> Result<usize> {
    let i: usize = s.trim().parse().map_err(|_| format_err(format!("bad basis index {s:?}")))?;
    if i >= n {
        return Err(format_err(format!("basis index {i} out of range")));
    }
    Ok(i)
}

impl AlgebraFile {
    /// Canonical form: nonzero brackets `[e_i, e_j]` with `i < j` and
    /// nonzero p-map values only.
    pub fn from_algebra(l: &RestrictedLieAlgebra) -> Self {
        let f = l.field();
        let enc = |v: &[Fe]| v.iter().map(|&c| encode(f, c)).collect::<Vec<_>>();
        let nonzero = |v: &[Fe]| v.iter().any(|&c| c != 0);
        let mut bracket = BTreeMap::new();
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let v = &l.bracket_table()[i][j];
                if nonzero(v) {
                    bracket.insert(format!("{i},{j}"), enc(v));
                }
            }
        }
        let pmap = (0..l.dim())
            .filter(|&i| nonzero(&l.pmap_table()[i]))
            .map(|i| (i.to_string(), enc(&l.pmap_table()[i])))
            .collect();
        AlgebraFile {
            p: f.characteristic(),
            field: FieldSpec { k: f.degree(), modulus: Some(f.modulus().to_vec()) },
            basis: l.names().to_vec(),
            bracket,
            pmap,
        }
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.field.k, self.field.modulus.clone())
    }

    /// Builds the algebra; `[e_j, e_i]` is filled in by antisymmetry and a
    /// pair given in both orders must agree.
    pub fn to_algebra(&self) -> Result<RestrictedLieAlgebra> {
        let f = self.field()?;
        let n = self.basis.len();
        let mut bracket = vec![vec![vec![0; n]; n]; n];
        let mut given = vec![vec![false; n]; n];
        for (key, v) in &self.bracket {
            let (a, b) = key.split_once(',').ok_or_else(|| format_err(format!("bracket key {key:?} is not \"i,j\"")))?;
            let (i, j) = (parse_index(a, n)?, parse_index(b, n)?);
            let v = decode_vec(&f, v, n, &format!("bracket {key}"))?;
            let neg: Element = v.iter().map(|&c| f.neg(c)).collect();
            if (given[i][j] && bracket[i][j] != v) || (given[j][i] && bracket[j][i] != neg) {
                return Err(format_err(format!("bracket {key} conflicts with antisymmetry")));
            }
            bracket[i][j] = v;
            bracket[j][i] = neg;
            given[i][j] = true;
            given[j][i] = true;
        }
        let mut pmap = vec![vec![0; n]; n];
        for (key, v) in &self.pmap {
            let i = parse_index(key, n)?;
            pmap[i] = decode_vec(&f, v, n, &format!("pmap {key}"))?;
        }
        RestrictedLieAlgebra::new(&f, self.basis.clone(), bracket, pmap)
    }
}

/// Parses an algebra file, checking the restricted Lie algebra axioms unless
/// `verify` is false.
pub fn parse_algebra(text: &str, verify: bool) -> Result<RestrictedLieAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    let l = file.to_algebra()?;
    if verify {
        let report = l.verify_axioms();
        if !report.passed() {
            return Err(Error::AxiomFailure(format!("{report:?}")));
        }
    }
    Ok(l)
}

pub fn emit_algebra(l: &RestrictedLieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(l)).expect("serializable");
    s.push('\n');
    s
}

impl ModuleFile {
    pub fn from_module(m: &RepModule) -> Self {
        let f = m.field();
        let actions = m
            .actions()
            .iter()
            .map(|a| (0..m.dim()).map(|r| a.row(r).iter().map(|&c| encode(f, c)).collect()).collect())
            .collect();
        ModuleFile { algebra: AlgebraRef::Inline(AlgebraFile::from_algebra(m.algebra())), dim: m.dim(), actions }
    }

    /// Builds the module; a path reference is resolved against `base`.
    pub fn to_module(&self, base: Option<&Path>) -> Result<RepModule> {
        let l = match &self.algebra {
            AlgebraRef::Inline(a) => a.to_algebra()?,
            AlgebraRef::Path(p) => {
                let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format_err(format!("reading {}: {e}", path.display())))?;
                parse_algebra(&text, false)?
            }
        };
        let f = l.field().clone();
        if self.actions.len() != l.dim() {
            return Err(format_err(format!("{} action matrices for an algebra of dimension {}", self.actions.len(), l.dim())));
        }
        let d = self.dim;
        let mut mats = vec![];
        for (i, rows) in self.actions.iter().enumerate() {
            if rows.len() != d {
                return Err(format_err(format!("action {i}: expected {d} rows, found {}", rows.len())));
            }
            let rows: Vec<Element> =
                rows.iter().enumerate().map(|(r, row)| decode_vec(&f, row, d, &format!("action {i} row {r}"))).collect::<Result<_>>()?;
            mats.push(Matrix::from_rows(&f, d, &rows));
        }
        RepModule::new(&l, mats)
    }
}

/// Parses a module file, checking the module relations unless `verify` is
/// false. Relative algebra paths are resolved against `base`.
pub fn parse_module(text: &str, base: Option<&Path>, verify: bool) -> Result<RepModule> {
    let file: ModuleFile = serde_json::from_str(text).map_err(|e| format_err(e.to_string()))?;
    let m = file.to_module(base)?;
    if verify {
        if let AlgebraRef::Inline(_) = file.algebra {
            let report = m.algebra().verify_axioms();
            if !report.passed() {
                return Err(Error::AxiomFailure(format!("{report:?}")));
            }
        }
        m.verify().map_err(|e| Error::AxiomFailure(e.to_string()))?;
    }
    Ok(m)
}

pub fn emit_module(m: &RepModule) -> String {
    let mut s = serde_json::to_string_pretty(&ModuleFile::from_module(m)).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, HeisenbergPmap};

    #[test]
    fn algebra_round_trip() {
        let f3 = Field::prime(3).unwrap();
        let f9 = Field::new(3, 2, None).unwrap();
        let algebras = vec![
            catalog::sl2_s(&f3).unwrap(),
            catalog::heisenberg(&f3, HeisenbergPmap::ToralCenter).unwrap(),
            catalog::thm_a_case(&f3, 2, 2).unwrap(),
            catalog::sl2_s(&f9).unwrap().change_basis(&[vec![3, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap(),
        ];
        for l in algebras {
            let text = emit_algebra(&l);
            let back = parse_algebra(&text, true).unwrap();
            assert_eq!(back, l);
            assert_eq!(emit_algebra(&back), text);
        }
    }

    #[test]
    fn module_round_trip() {
        let f = Field::prime(3).unwrap();
        let m = catalog::rad_z0(&f).unwrap();
        let text = emit_module(&m);
        let back = parse_module(&text, None, true).unwrap();
        assert_eq!(back.actions(), m.actions());
        assert_eq!(back.algebra(), m.algebra());
        assert_eq!(emit_module(&back), text);
    }

    #[test]
    fn hand_written_algebra() {
        let text = r#"{"p": 3, "basis": ["x", "y", "z"], "bracket": {"0,1": [0, 0, 1]}}"#;
        let l = parse_algebra(text, true).unwrap();
        assert_eq!(l, catalog::heisenberg(&Field::prime(3).unwrap(), HeisenbergPmap::Zero).unwrap());
        let text9 = r#"{"p": 3, "field": {"k": 2}, "basis": ["a"], "pmap": {"0": [[0, 1]]}}"#;
        assert_eq!(parse_algebra(text9, true).unwrap().field().order(), 9);
        let unrestricted = r#"{"p": 3, "basis": ["x", "y", "z"], "bracket": {"0,1": [0, 0, 1]}, "pmap": {"0": [1, 0, 0]}}"#;
        assert!(matches!(parse_algebra(unrestricted, true), Err(Error::AxiomFailure(_))));
        assert!(parse_algebra(unrestricted, false).is_ok());
    }

    #[test]
    fn format_errors() {
        let bad = [
            r#"{"p": 3}"#,
            r#"{"p": 3, "basis": ["x"], "bracket": {"0": [0]}}"#,
            r#"{"p": 3, "basis": ["x", "y"], "bracket": {"0,5": [0, 0]}}"#,
            r#"{"p": 3, "basis": ["x", "y"], "bracket": {"0,1": [0]}}"#,
            r#"{"p": 3, "basis": ["x", "y"], "bracket": {"0,1": [1, 0], "1,0": [1, 0]}}"#,
            r#"{"p": 3, "field": {"k": 2}, "basis": ["x"], "pmap": {"0": [[0, 3]]}}"#,
            r#"{"p": 3, "basis": ["x"], "extra": 1}"#,
        ];
        for text in bad {
            assert!(matches!(parse_algebra(text, true), Err(Error::Format(_))), "{text}");
        }
    }

    #[test]
    fn module_errors() {
        let algebra = r#"{"p": 3, "basis": ["x"]}"#;
        let wrong_rows = format!(r#"{{"algebra": {algebra}, "dim": 2, "actions": [[[0, 1]]]}}"#);
        assert!(matches!(parse_module(&wrong_rows, None, true), Err(Error::Format(_))));
        let toral = r#"{"algebra": {"p": 3, "basis": ["x"], "pmap": {"0": [1]}}, "dim": 1, "actions": [[[2]]]}"#;
        assert!(parse_module(toral, None, true).is_ok());
        let bad = r#"{"algebra": {"p": 3, "basis": ["x"]}, "dim": 1, "actions": [[[1]]]}"#;
        assert!(matches!(parse_module(bad, None, true), Err(Error::AxiomFailure(_))));
        assert!(parse_module(bad, None, false).is_ok());
    }
}
