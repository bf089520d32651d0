//! Built-in quiver names and the description-file parser
//! (see docs/quiver-format.md).

use quivercount::error::Error;
use quivercount::quiver::Quiver;

/// Resolves a `--quiver` argument: a built-in name first, then a file path.
pub fn resolve(spec: &str) -> Result<Quiver, Error> {
    if let Some(q) = builtin(spec)? {
        return Ok(q);
    }
    let path = std::path::Path::new(spec);
    if !path.exists() {
        return Err(Error::domain(format!(
            "`{spec}` is neither a built-in quiver name nor an existing file"
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::domain(format!("cannot read {spec}: {e}")))?;
    parse(&text)
}

fn builtin(name: &str) -> Result<Option<Quiver>, Error> {
    let q = match name {
        "vertex" | "a1" => Quiver::new(1, vec![])?,
        "a2" => Quiver::new(2, vec![(0, 1)])?,
        "a3" => Quiver::new(3, vec![(0, 1), (1, 2)])?,
        // D_4 with the triple vertex last: arrows from each leaf into it.
        "d4" => Quiver::new(4, vec![(0, 3), (1, 3), (2, 3)])?,
        "jordan" => Quiver::new(1, vec![(0, 0)])?,
        _ => {
            if let Some(rest) = name.strip_prefix("cyclic:") {
                let l: usize = rest
                    .parse()
                    .map_err(|_| Error::domain(format!("bad cyclic length `{rest}`")))?;
                if l == 0 {
                    return Err(Error::domain("cyclic quiver needs ≥ 1 vertex"));
                }
                Quiver::new(l, (0..l).map(|i| (i, (i + 1) % l)).collect())?
            } else {
                return Ok(None);
            }
        }
    };
    Ok(Some(q))
}

/// Description file format: two fields, `#`-comments and blank lines
/// ignored. Vertex indices are 0-based.
///
/// ```text
/// vertices: 2
/// arrows: [[0,1],[1,0]]
/// ```
pub fn parse(text: &str) -> Result<Quiver, Error> {
    let mut vertices: Option<usize> = None;
    let mut arrows: Option<Vec<(usize, usize)>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::domain(format!(
                "line {}: expected `key: value`, got `{line}`",
                lineno + 1
            )));
        };
        match key.trim() {
            "vertices" => {
                vertices = Some(value.trim().parse().map_err(|_| {
                    Error::domain(format!("line {}: bad vertex count", lineno + 1))
                })?);
            }
            "arrows" => {
                let pairs: Vec<[usize; 2]> =
                    serde_json::from_str(value.trim()).map_err(|e| {
                        Error::domain(format!("line {}: bad arrow list: {e}", lineno + 1))
                    })?;
                arrows = Some(pairs.into_iter().map(|[t, h]| (t, h)).collect());
            }
            other => {
                return Err(Error::domain(format!(
                    "line {}: unknown field `{other}`",
                    lineno + 1
                )));
            }
        }
    }
    let vertices = vertices.ok_or_else(|| Error::domain("missing `vertices:` field"))?;
    Quiver::new(vertices, arrows.unwrap_or_default())
}
