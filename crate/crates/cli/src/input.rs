use std::io::Read;
use std::path::{Path, PathBuf};

use rlie_core::{format, Element, Error, Fe, Field, RepModule, RestrictedLieAlgebra};
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Format(_) | Error::UnknownEntry(_)) | CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::Core(Error::AxiomFailure(_)) | CliError::Verification(_) => 3,
            CliError::Core(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "computation",
            2 => "input",
            _ => "verification",
        }
    }

    pub fn to_json(&self) -> String {
        let message = match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) | CliError::Verification(m) => m.clone(),
        };
        let mut v = json!({ "error": self.kind(), "message": message });
        if let CliError::Core(e) = self {
            v["variant"] = json!(variant_name(e));
            if let Error::NotSplit { suggested_degree } = e {
                v["suggested_degree"] = json!(suggested_degree);
            }
        }
        v.to_string()
    }
}

fn variant_name(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
    }
}

pub fn write_text(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn load_algebra(path: &Path, verify: bool) -> Result<RestrictedLieAlgebra, CliError> {
    Ok(format::parse_algebra(&read_text(path)?, verify)?)
}

pub fn load_module(path: &Path, verify: bool) -> Result<RepModule, CliError> {
    let base = if path == Path::new("-") { None } else { path.parent() };
    Ok(format::parse_module(&read_text(path)?, base, verify)?)
}

/// The degree-`k` extension of `base`.
pub fn extension(base: &Field, k: u32) -> Result<Field, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--field-ext must be positive".into()));
    }
    if k == 1 {
        return Ok(base.clone());
    }
    Ok(Field::new(base.characteristic(), base.degree() * k, None)?)
}

/// Parses `2t^2+t+1`, a plain integer, or `-1` as an element of `f`.
pub fn parse_scalar(f: &Field, s: &str) -> Result<Fe, CliError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(n) = s.parse::<i64>() {
        return Ok(f.from_int(n));
    }
    let bad = || CliError::Usage(format!("cannot parse scalar {s:?}"));
    let mut digits = vec![0u32; f.degree() as usize];
    let p = f.characteristic() as i64;
    for term in s.split('+') {
        let (coef, power) = match term.find('t') {
            None => (term, 0usize),
            Some(i) => {
                let exp = &term[i + 1..];
                let power = if exp.is_empty() {
                    1
                } else {
                    exp.strip_prefix('^').and_then(|e| e.parse().ok()).ok_or_else(bad)?
                };
                (&term[..i], power)
            }
        };
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
        let slot = digits.get_mut(power).ok_or_else(bad)?;
        *slot = ((*slot as i64 + c).rem_euclid(p)) as u32;
    }
    Ok(f.from_digits(&digits)?)
}

/// Parses `i:c,j:d` where `i`, `j` are basis indices or names and a bare
/// entry means coefficient 1.
pub fn parse_vector(l: &RestrictedLieAlgebra, f: &Field, s: &str) -> Result<Element, CliError> {
    let mut v = vec![0; l.dim()];
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, coef) = part.split_once(':').unwrap_or((part, "1"));
        let idx = l
            .index_of(key)
            .or_else(|| key.parse::<usize>().ok().filter(|&i| i < l.dim()))
            .ok_or_else(|| CliError::Usage(format!("unknown basis element {key:?}")))?;
        v[idx] = f.add(v[idx], parse_scalar(f, coef)?);
    }
    Ok(v)
}

pub fn parse_plane(l: &RestrictedLieAlgebra, f: &Field, s: &str) -> Result<(Element, Element), CliError> {
    let (a, b) = s.split_once(';').ok_or_else(|| CliError::Usage(format!("plane {s:?} needs two vectors separated by ';'")))?;
    Ok((parse_vector(l, f, a)?, parse_vector(l, f, b)?))
}
