use std::fs;
use std::io::Read;
use std::path::Path;

use brkit_core::pipeline::parse_supports;
use brkit_core::{parse_system, IntMatrix, LatticeSupport, PolySystem};
use serde_json::Value;

use crate::Failure;

pub fn read_text(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Accepts the coefficient form `{"dim", "polys": [{"terms": [...]}]}` or the expression
/// form `{"dim", "polys": ["z1^2 - 1", ...]}`.
pub fn system(path: &Path) -> Result<PolySystem, Failure> {
    let text = read_text(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let exprs = v
        .get("polys")
        .and_then(Value::as_array)
        .filter(|a| a.iter().all(Value::is_string) && !a.is_empty());
    let s = match exprs {
        Some(a) => {
            let exprs: Vec<&str> = a.iter().filter_map(Value::as_str).collect();
            let dim = v.get("dim").and_then(Value::as_u64).map_or(exprs.len(), |d| d as usize);
            parse_system(dim, &exprs)?
        }
        None => PolySystem::from_json(&text)?,
    };
    Ok(s)
}

pub fn supports(path: &Path) -> Result<Vec<LatticeSupport>, Failure> {
    Ok(parse_supports(&read_text(path)?)?)
}

pub fn matrix(path: &Path) -> Result<IntMatrix, Failure> {
    Ok(IntMatrix::from_json(&read_text(path)?)?)
}
