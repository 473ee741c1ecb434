use super::{IdentityCase, Report, Residual};
use crate::error::{Error, Result};

pub fn to_json(report: &Report) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn residual_columns(r: &Residual) -> (String, String) {
    match r {
        Residual::ExactZero(z) => ((if *z { "0" } else { "nonzero" }).into(), String::new()),
        Residual::Float { value, bound } => (format!("{value:e}"), format!("{bound:e}")),
    }
}

fn lower<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

/// One row per case: `case_id, mode, params, status, residual, bound,
/// citation, detail`, with params flattened as `k=v;k=v`.
pub fn to_csv(cases: &[IdentityCase]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record(["case_id", "mode", "params", "status", "residual", "bound", "citation", "detail"]).map_err(csv_err)?;
    for c in cases {
        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let (res, bound) = residual_columns(&c.residual);
        w.write_record([
            c.id.as_str(),
            &lower(&c.mode),
            &params.join(";"),
            &lower(&c.status),
            &res,
            &bound,
            &c.citation,
            c.detail.as_deref().unwrap_or(""),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params;

    #[test]
    fn csv_quotes_and_flattens() {
        let c = IdentityCase::exact("x", "a, b", params!("k" => 1, "m" => 2), true);
        let out = to_csv(&[c]).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), "case_id,mode,params,status,residual,bound,citation,detail");
        assert_eq!(lines.next().unwrap(), "x,exact,k=1;m=2,pass,0,,\"a, b\",");
    }
}
