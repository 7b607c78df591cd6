//! CSV tables: UTF-8, comma separated, header row, `\n` line endings and ten
//! significant digits.

use helionics_core::{ProfileCurve, StateKind, SweepRow};

use crate::error::CliResult;

pub const SWEEP_HEADER: [&str; 15] = [
    "z", "kind", "z1", "z2", "energy", "s_rho_u", "s_pi_u", "s_gamma_u", "s_pi2_u", "sum1e", "sum2e",
    "i_r", "i_p", "i_r_prime", "i_p_prime",
];

pub const SIGNIFICANT_DIGITS: usize = 10;

/// Shortest decimal form of `x` rounded to ten significant digits. Parsing
/// the result gives back exactly the rounded value.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        return "0".into();
    }
    rounded.to_string()
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// One sweep line: the charge, the kind and either a row or an error message.
pub struct SweepLine<'a> {
    pub z: f64,
    pub kind: StateKind,
    pub row: Result<&'a SweepRow, String>,
}

/// Sweep table. An `error` column is appended only when some line failed.
pub fn sweep_csv(lines: &[SweepLine<'_>]) -> CliResult<String> {
    let with_errors = lines.iter().any(|l| l.row.is_err());
    let mut w = writer();
    let mut header: Vec<&str> = SWEEP_HEADER.to_vec();
    if with_errors {
        header.push("error");
    }
    w.write_record(&header)?;
    for line in lines {
        let mut record = vec![format_sig(line.z), line.kind.as_str().to_string()];
        match &line.row {
            Ok(row) => {
                let m = &row.report;
                let opt = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
                record.extend(
                    [
                        row.params[0],
                        row.params[1],
                        row.energy.total,
                        m.s_rho_u,
                        m.s_pi_u,
                        m.s_gamma_u,
                        m.s_pi2_u,
                        m.entropy_sum_1e,
                        m.entropy_sum_2e,
                        m.i_r,
                        m.i_p,
                    ]
                    .map(format_sig),
                );
                record.push(opt(m.i_r_prime));
                record.push(opt(m.i_p_prime));
                if with_errors {
                    record.push(String::new());
                }
            }
            Err(msg) => {
                record.extend(std::iter::repeat_n(String::new(), SWEEP_HEADER.len() - 2));
                record.push(msg.clone());
            }
        }
        w.write_record(&record)?;
    }
    finish(w)
}

/// Two-column `abscissa,value` table.
pub fn profile_csv(curve: &ProfileCurve) -> CliResult<String> {
    let mut w = writer();
    w.write_record(["abscissa", "value"])?;
    for (x, v) in curve.abscissae.iter().zip(&curve.values) {
        w.write_record([format_sig(*x), format_sig(*v)])?;
    }
    finish(w)
}

/// A CSV table read back for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let headers = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<Result<_, _>>()?;
        Ok(Table { headers, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }

    /// Numeric `(x, y)` pairs of two columns; rows where either cell is empty
    /// or non-numeric are skipped.
    pub fn pairs(&self, x: &str, y: &str) -> CliResult<Vec<(f64, f64)>> {
        let ix = self
            .column_index(x)
            .ok_or_else(|| crate::error::CliError::MissingColumn(x.into()))?;
        let iy = self
            .column_index(y)
            .ok_or_else(|| crate::error::CliError::MissingColumn(y.into()))?;
        Ok(self
            .rows
            .iter()
            .filter_map(|row| {
                let a = row.get(ix)?.parse::<f64>().ok()?;
                let b = row.get(iy)?.parse::<f64>().ok()?;
                (a.is_finite() && b.is_finite()).then_some((a, b))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(format_sig(0.581_883_012_345_678), "0.5818830123");
        assert_eq!(format_sig(-2.875_661_330_0), "-2.87566133");
        assert_eq!(format_sig(2.0), "2");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(1.234_567_890_49e-5), "0.0000123456789");
    }

    #[test]
    fn round_trips_at_emitted_precision() {
        for x in [0.1, 1.0 / 3.0, -881.371_309_7, 6.434_189_657_548_2, 2.5e-8, 12_345.678_901_234] {
            let s = format_sig(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(format_sig(back), s);
            assert!((back - x).abs() <= 5e-10 * x.abs());
        }
    }

    #[test]
    fn table_pairs_skip_blanks() {
        let t = Table::parse("z,a,b\n2,1.5,\n3,2.5,0.1\n").unwrap();
        assert_eq!(t.pairs("z", "a").unwrap(), vec![(2.0, 1.5), (3.0, 2.5)]);
        assert_eq!(t.pairs("z", "b").unwrap(), vec![(3.0, 0.1)]);
        assert!(matches!(
            t.pairs("z", "nope"),
            Err(crate::error::CliError::MissingColumn(_))
        ));
    }
}
