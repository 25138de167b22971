use std::fs;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groups::{
    alternating, cyclic, dihedral, direct_power, direct_product, psl27, quaternion, symmetric, trivial, FiniteGroup,
    GroupRef,
};

/// A multiplication table read from a `file:` group spec.
#[derive(Deserialize)]
struct TableFile {
    label: String,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    gens: Option<Vec<usize>>,
}

fn number(s: &str, spec: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::invalid(format!("bad group spec `{spec}`")))
}

fn atom(s: &str) -> Result<GroupRef> {
    if let Some(path) = s.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
        let t: TableFile =
            serde_json::from_str(&text).map_err(|e| Error::invalid(format!("bad table file {path}: {e}")))?;
        return FiniteGroup::from_table(t.label, t.table, t.gens);
    }
    match s {
        "trivial" | "1" => return Ok(trivial()),
        "Q8" => return quaternion(),
        "PSL27" | "PSL(2,7)" => return psl27(),
        _ => {}
    }
    let (head, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
    match head {
        "C" => cyclic(number(rest, s)?),
        "D" => dihedral(number(rest, s)?),
        "S" => symmetric(number(rest, s)?),
        "A" => alternating(number(rest, s)?),
        _ => Err(Error::invalid(format!(
            "unknown group `{s}`; expected trivial, Cn, Dm, Sn, An, Q8, PSL27 or file:PATH"
        ))),
    }
}

fn factor(s: &str) -> Result<GroupRef> {
    match s.split_once('^') {
        Some((base, k)) => direct_power(&atom(base)?, number(k, s)?),
        None => atom(s),
    }
}

/// Parses `FACTOR(xFACTOR)*` where a factor is `ATOM` or `ATOM^k` and an
/// atom is `trivial`, `Cn`, `Dm` (dihedral of order `2m`), `Sn`, `An`,
/// `Q8`, `PSL27` or `file:PATH` (JSON `{label, table, gens?}`).
pub fn parse_group(spec: &str) -> Result<GroupRef> {
    let spec = spec.trim();
    if spec.starts_with("file:") {
        return atom(spec);
    }
    let mut parts = spec.split('x');
    let first = parts.next().filter(|p| !p.is_empty()).ok_or_else(|| Error::invalid("empty group spec"))?;
    let mut g = factor(first)?;
    for p in parts {
        g = direct_product(&g, &factor(p)?)?;
    }
    Ok(g)
}
