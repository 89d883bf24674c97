//! JSON verdict reports for `equiv` and `coset`.

use lucoset::lu::{EquivalenceVerdict, OptimizerConfig, Witness};
use lucoset::young::LocalStructure;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::matrix_file::matrix_from_value;
use lucoset::linalg::ComplexMatrix;

fn witness_json(w: &Witness) -> Value {
    json!({
        "component": w.component.to_string(),
        "left": w.left,
        "right": w.right,
        "difference": w.difference,
    })
}

fn certificate_text(factors: &[ComplexMatrix]) -> String {
    let blocks: Vec<String> = factors
        .iter()
        .map(|m| {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| {
                    let row = Value::Array(m.row(i).iter().map(|z| json!([z.re, z.im])).collect());
                    format!("      {row}")
                })
                .collect();
            format!("    [\n{}\n    ]", rows.join(",\n"))
        })
        .collect();
    format!("[\n{}\n  ]", blocks.join(",\n"))
}

/// The machine-readable report. Every tolerance and the seed are included.
/// Top-level keys come one per line; certificate factors one matrix row per line.
pub fn verdict_report(
    command: &str,
    verdict: &EquivalenceVerdict,
    dims: &LocalStructure,
    cfg: &OptimizerConfig,
    extra: Option<(&str, Value)>,
) -> String {
    let mut fields: Vec<(&str, String)> = vec![
        ("command", json!(command).to_string()),
        ("verdict", json!(verdict.tag.as_str()).to_string()),
        ("residual", json!(verdict.residual).to_string()),
        ("restarts_run", json!(verdict.restarts_run).to_string()),
        ("witness", verdict.witness.as_ref().map_or(Value::Null, witness_json).to_string()),
        ("certificate", verdict.certificate.as_deref().map_or("null".to_string(), certificate_text)),
        ("dims", json!(dims.dims()).to_string()),
    ];
    if let Some((key, value)) = &extra {
        fields.push((key, value.to_string()));
    }
    fields.extend([
        ("seed", json!(cfg.seed).to_string()),
        ("restarts", json!(cfg.restarts).to_string()),
        ("max_iters", json!(cfg.max_iters).to_string()),
        ("step_init", json!(cfg.step_init).to_string()),
        (
            "tolerances",
            json!({
                "tol_success": cfg.tol_success,
                "screen_tol": cfg.screen_tol,
                "cluster_tol": cfg.cluster_tol,
            })
            .to_string(),
        ),
    ]);
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("  {}: {v}", json!(k))).collect();
    format!("{{\n{}\n}}\n", body.join(",\n"))
}

/// The certificate factors stored in a report, if any.
pub fn certificate_from_report(text: &str) -> Result<Option<Vec<ComplexMatrix>>, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    match value.get("certificate") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Array(factors)) => factors.iter().map(matrix_from_value).collect::<Result<_, _>>().map(Some),
        Some(_) => Err(CliError::Parse("certificate is not a list of matrices".into())),
    }
}
