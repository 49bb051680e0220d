use crate::domain::MAX_N;
use crate::kernels::ExtCost;
use crate::solvers::Instance;

use super::{InstanceDocument, IoError, SourceFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WeightFormat {
    FullMatrix,
    LowerDiagRow,
    UpperRow,
}

#[derive(Debug, Default)]
struct Header {
    name: Option<String>,
    comment: Option<String>,
    dimension: Option<i64>,
    edge_weight_type: Option<String>,
    edge_weight_format: Option<String>,
}

/// Parses the supported TSPLIB subset:
///
/// * `TYPE: TSP | ATSP`
/// * `EDGE_WEIGHT_TYPE: EXPLICIT` with `EDGE_WEIGHT_FORMAT` one of
///   `FULL_MATRIX`, `LOWER_DIAG_ROW`, `UPPER_ROW` (triangles are mirrored)
/// * `EDGE_WEIGHT_TYPE: EUC_2D` with a `NODE_COORD_SECTION`; distances are the
///   Euclidean distance rounded half away from zero.
pub fn parse_tsplib(text: &str) -> Result<InstanceDocument, IoError> {
    let mut header = Header::default();
    let mut weights: Option<Vec<String>> = None;
    let mut coords: Option<Vec<String>> = None;

    let mut lines = text.lines().map(str::trim).peekable();
    while let Some(line) = lines.next() {
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (line, ""),
        };
        match key.to_ascii_uppercase().as_str() {
            "EOF" => break,
            "NAME" => header.name = Some(value.to_string()),
            "COMMENT" => {
                header.comment = Some(match header.comment.take() {
                    Some(prev) => format!("{prev}\n{value}"),
                    None => value.to_string(),
                })
            }
            "TYPE" => match value.to_ascii_uppercase().as_str() {
                "TSP" | "ATSP" => {}
                other => return Err(unsupported("TYPE", other)),
            },
            "DIMENSION" => {
                header.dimension = Some(value.parse().map_err(|_| {
                    IoError::Malformed(format!("DIMENSION `{value}` is not an integer"))
                })?)
            }
            "EDGE_WEIGHT_TYPE" => header.edge_weight_type = Some(value.to_ascii_uppercase()),
            "EDGE_WEIGHT_FORMAT" => header.edge_weight_format = Some(value.to_ascii_uppercase()),
            "EDGE_WEIGHT_SECTION" => weights = Some(section_tokens(&mut lines)),
            "NODE_COORD_SECTION" => coords = Some(section_tokens(&mut lines)),
            k if k.ends_with("_SECTION") => {
                section_tokens(&mut lines);
            }
            // Remaining specification keys (NODE_COORD_TYPE, DISPLAY_DATA_TYPE,
            // CAPACITY, ...) do not affect the cost matrix.
            _ if !value.is_empty() => {}
            _ => return Err(IoError::Malformed(format!("unexpected line `{line}`"))),
        }
    }

    let dim = header
        .dimension
        .ok_or_else(|| IoError::Malformed("missing DIMENSION".into()))?;
    if dim < 1 || dim > MAX_N as i64 {
        return Err(IoError::Dimension(dim));
    }
    let n = dim as usize;

    let rows = match header.edge_weight_type.as_deref() {
        Some("EXPLICIT") => {
            let format = match header.edge_weight_format.as_deref() {
                Some("FULL_MATRIX") => WeightFormat::FullMatrix,
                Some("LOWER_DIAG_ROW") => WeightFormat::LowerDiagRow,
                Some("UPPER_ROW") => WeightFormat::UpperRow,
                Some(other) => return Err(unsupported("EDGE_WEIGHT_FORMAT", other)),
                None => return Err(IoError::Malformed("missing EDGE_WEIGHT_FORMAT".into())),
            };
            let tokens =
                weights.ok_or_else(|| IoError::Malformed("missing EDGE_WEIGHT_SECTION".into()))?;
            explicit_matrix(n, format, &tokens)?
        }
        Some("EUC_2D") => {
            let tokens =
                coords.ok_or_else(|| IoError::Malformed("missing NODE_COORD_SECTION".into()))?;
            euclidean_matrix(n, &tokens)?
        }
        Some(other) => return Err(unsupported("EDGE_WEIGHT_TYPE", other)),
        None => return Err(IoError::Malformed("missing EDGE_WEIGHT_TYPE".into())),
    };

    Ok(InstanceDocument {
        name: header.name.unwrap_or_default(),
        comment: header.comment,
        source_format: SourceFormat::Tsplib,
        instance: Instance::from_rows(&rows)?,
    })
}

fn unsupported(key: &str, value: &str) -> IoError {
    IoError::Unsupported {
        key: key.into(),
        value: value.into(),
    }
}

/// Collects whitespace-separated tokens up to the next keyword line.
fn section_tokens<'a, I>(lines: &mut std::iter::Peekable<I>) -> Vec<String>
where
    I: Iterator<Item = &'a str>,
{
    let mut tokens = Vec::new();
    while let Some(line) = lines.peek() {
        let starts_keyword = line.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if starts_keyword {
            break;
        }
        tokens.extend(line.split_whitespace().map(String::from));
        lines.next();
    }
    tokens
}

fn parse_weight(token: &str) -> Result<u64, IoError> {
    token
        .parse::<u64>()
        .ok()
        .filter(|&w| w < ExtCost::MAX_INPUT)
        .ok_or_else(|| IoError::Weight(token.to_string()))
}

#[allow(clippy::needless_range_loop)]
fn explicit_matrix(
    n: usize,
    format: WeightFormat,
    tokens: &[String],
) -> Result<Vec<Vec<u64>>, IoError> {
    let expected = match format {
        WeightFormat::FullMatrix => n * n,
        WeightFormat::LowerDiagRow => n * (n + 1) / 2,
        WeightFormat::UpperRow => n * (n - 1) / 2,
    };
    if tokens.len() != expected {
        return Err(IoError::Malformed(format!(
            "EDGE_WEIGHT_SECTION has {} entries, expected {expected}",
            tokens.len()
        )));
    }
    let mut values = tokens.iter().map(|t| parse_weight(t));
    let mut rows = vec![vec![0u64; n]; n];
    match format {
        WeightFormat::FullMatrix => {
            for row in rows.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = values.next().expect("counted")?;
                }
            }
        }
        WeightFormat::LowerDiagRow => {
            for i in 0..n {
                for j in 0..=i {
                    let w = values.next().expect("counted")?;
                    rows[i][j] = w;
                    rows[j][i] = w;
                }
            }
        }
        WeightFormat::UpperRow => {
            for i in 0..n {
                for j in i + 1..n {
                    let w = values.next().expect("counted")?;
                    rows[i][j] = w;
                    rows[j][i] = w;
                }
            }
        }
    }
    Ok(rows)
}

fn euclidean_matrix(n: usize, tokens: &[String]) -> Result<Vec<Vec<u64>>, IoError> {
    if tokens.len() != 3 * n {
        return Err(IoError::Malformed(format!(
            "NODE_COORD_SECTION has {} tokens, expected {}",
            tokens.len(),
            3 * n
        )));
    }
    let mut points: Vec<Option<(f64, f64)>> = vec![None; n];
    for chunk in tokens.chunks_exact(3) {
        let id: usize = chunk[0]
            .parse()
            .map_err(|_| IoError::Malformed(format!("node id `{}`", chunk[0])))?;
        let coord = |t: &str| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| IoError::Malformed(format!("coordinate `{t}`")))
        };
        let slot = id
            .checked_sub(1)
            .and_then(|i| points.get_mut(i))
            .ok_or_else(|| IoError::Malformed(format!("node id {id} outside 1..={n}")))?;
        if slot
            .replace((coord(&chunk[1])?, coord(&chunk[2])?))
            .is_some()
        {
            return Err(IoError::Malformed(format!("duplicate node id {id}")));
        }
    }
    let points: Vec<(f64, f64)> = points
        .into_iter()
        .map(|p| p.expect("all ids seen"))
        .collect();
    let mut rows = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                let d = dx.hypot(dy).round();
                if d >= ExtCost::MAX_INPUT as f64 {
                    return Err(IoError::Weight(d.to_string()));
                }
                rows[i][j] = d as u64;
            }
        }
    }
    Ok(rows)
}
