use crate::error::{Error, Result};

/// Prefactor of the reference lines `C δ^k`.
pub const REFERENCE_PREFACTOR: f64 = 1e3;

/// A gnuplot script drawing `σ_min` against `δ` on log-log axes, with one
/// dashed reference line `C δ^k` per entry of `ks`.
pub fn emit_plotscript(csv_path: &str, csv: &str, ks: &[u32]) -> Result<String> {
    let header = csv
        .lines()
        .find(|l| !l.starts_with('#') && !l.trim().is_empty())
        .ok_or_else(|| Error::InvalidArgument("empty CSV".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let col = |name: &str| {
        cols.iter()
            .position(|c| *c == name)
            .map(|i| i + 1)
            .ok_or_else(|| Error::InvalidArgument(format!("CSV has no '{name}' column")))
    };
    let (cd, cs) = (col("delta")?, col("sigma_min")?);
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set datafile commentschars '#'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("set logscale xy\n");
    s.push_str("set format x '10^{%L}'\nset format y '10^{%L}'\n");
    s.push_str("set xlabel 'delta'\nset ylabel 'sigma_min'\n");
    s.push_str(&format!("C = {REFERENCE_PREFACTOR:e}\n"));
    let mut items = vec![format!(
        "'{}' using {cd}:{cs} with linespoints lw 2 title 'sigma_min'",
        csv_path.replace('\'', "''")
    )];
    for k in ks {
        items.push(format!("C*x**{k} with lines dashtype 2 title 'C delta^{k}'"));
    }
    s.push_str(&format!("plot {}\n", items.join(", \\\n     ")));
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_shape() {
        let csv = "# meta\ndelta,sigma_min,floor_hit\n0.1,0.5,false\n";
        let s = emit_plotscript("a.csv", csv, &[1, 2]).unwrap();
        assert!(s.contains("set logscale xy"));
        assert_eq!(s.matches("dashtype 2").count(), 2);
        assert!(s.contains("using 1:2"));
        assert!(emit_plotscript("a.csv", "x,y\n1,2\n", &[1]).is_err());
    }
}
