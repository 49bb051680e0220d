use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::domain::MAX_N;
use crate::kernels::ExtCost;
use crate::solvers::Instance;

use super::{InstanceDocument, IoError, SourceFormat};

#[derive(Debug, Serialize, Deserialize)]
struct JsonInstance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    n: i64,
    // Kept untyped so negative or oversized weights get a precise error.
    costs: Vec<Vec<Value>>,
}

/// Parses `{"name"?, "comment"?, "n", "costs": [[...]]}`.
pub fn parse_json(text: &str) -> Result<InstanceDocument, IoError> {
    let doc: JsonInstance = serde_json::from_str(text)?;
    if doc.n < 1 || doc.n > MAX_N as i64 {
        return Err(IoError::Dimension(doc.n));
    }
    let n = doc.n as usize;
    if doc.costs.len() != n {
        return Err(IoError::Shape(format!(
            "{} cost rows for n = {n}",
            doc.costs.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in doc.costs.iter().enumerate() {
        if row.len() != n {
            return Err(IoError::Shape(format!(
                "row {} has {} entries for n = {n}",
                i + 1,
                row.len()
            )));
        }
        let parsed = row
            .iter()
            .map(|v| {
                v.as_u64()
                    .filter(|&w| w < ExtCost::MAX_INPUT)
                    .ok_or_else(|| IoError::Weight(v.to_string()))
            })
            .collect::<Result<Vec<u64>, _>>()?;
        rows.push(parsed);
    }
    Ok(InstanceDocument {
        name: doc.name.unwrap_or_default(),
        comment: doc.comment,
        source_format: SourceFormat::Json,
        instance: Instance::from_rows(&rows)?,
    })
}

/// Serializes a document; the name is omitted when empty.
pub fn write_json(doc: &InstanceDocument) -> String {
    let out = JsonInstance {
        name: (!doc.name.is_empty()).then(|| doc.name.clone()),
        comment: doc.comment.clone(),
        n: doc.instance.n() as i64,
        costs: doc
            .instance
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(Value::from).collect())
            .collect(),
    };
    let mut text = serde_json::to_string(&out).expect("plain data serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{gen_random, GeneratorSpec};
    use proptest::prelude::*;

    #[test]
    fn parses_minimal() {
        let doc = parse_json(r#"{"n":2,"costs":[[0,5],[7,0]]}"#).unwrap();
        assert_eq!(
            doc.instance,
            Instance::from_rows(&[[0, 5], [7, 0]]).unwrap()
        );
        assert_eq!(doc.source_format, SourceFormat::Json);
        assert_eq!(doc.name, "");
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            parse_json(r#"{"n":2,"costs":[[0,5]]}"#),
            Err(IoError::Shape(_))
        ));
        assert!(matches!(
            parse_json(r#"{"n":2,"costs":[[0,5],[7]]}"#),
            Err(IoError::Shape(_))
        ));
        assert!(matches!(
            parse_json(r#"{"n":2,"costs":[[0,-5],[7,0]]}"#),
            Err(IoError::Weight(_))
        ));
        assert!(matches!(
            parse_json(r#"{"n":2,"costs":[[0,9223372036854775808],[7,0]]}"#),
            Err(IoError::Weight(_))
        ));
        assert!(matches!(
            parse_json(r#"{"n":2,"costs":[[0,1.5],[7,0]]}"#),
            Err(IoError::Weight(_))
        ));
        assert!(matches!(
            parse_json(r#"{"n":0,"costs":[]}"#),
            Err(IoError::Dimension(0))
        ));
        assert!(matches!(
            parse_json(r#"{"n":33,"costs":[]}"#),
            Err(IoError::Dimension(33))
        ));
        assert!(matches!(parse_json("[1,2]"), Err(IoError::Json(_))));
    }

    #[test]
    fn generated_round_trip() {
        let doc = gen_random(&GeneratorSpec::new(8, 3, 1000, false)).unwrap();
        let back = parse_json(&write_json(&doc)).unwrap();
        assert_eq!(back.instance, doc.instance);
        assert_eq!(back.name, doc.name);
        assert_eq!(write_json(&back), write_json(&doc));
    }

    proptest! {
        #[test]
        fn round_trip(
            n in 1usize..=8,
            seed: u64,
            comment in proptest::option::of("[a-z ]{0,12}"),
            name in "[a-z0-9-]{0,10}",
        ) {
            let mut doc = gen_random(&GeneratorSpec::new(n, seed, 1 << 40, seed % 2 == 0)).unwrap();
            doc.name = name;
            doc.comment = comment;
            doc.source_format = SourceFormat::Json;
            prop_assert_eq!(parse_json(&write_json(&doc)).unwrap(), doc);
        }
    }
}
