use std::fmt::Write as _;
use std::path::Path;

/// A gnuplot script drawing every CSV as a time series (`D` and `L` against
/// `t`) and as a phase-plane curve (`L` against `D`). Run it from the
/// directory holding the CSVs; it writes `<stem>_timeseries.png` and
/// `<stem>_phase.png`.
pub fn script(stem: &str, csvs: &[&Path], timeseries: bool, phase: bool) -> String {
    let names: Vec<String> = csvs
        .iter()
        .map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
        .collect();
    let mut s = String::new();
    writeln!(s, "# gnuplot script for {stem}; run from the directory containing the CSV files").unwrap();
    writeln!(s, "set datafile separator ','").unwrap();
    writeln!(s, "set terminal pngcairo size 1000,700").unwrap();
    writeln!(s, "set grid").unwrap();
    writeln!(s, "set key outside right").unwrap();
    if timeseries && !names.is_empty() {
        writeln!(s, "\nset output '{stem}_timeseries.png'").unwrap();
        writeln!(s, "set xlabel 't'\nset ylabel 'population'").unwrap();
        let curves: Vec<String> = names
            .iter()
            .flat_map(|n| {
                let label = n.trim_end_matches(".csv");
                [
                    format!("'{n}' skip 1 using 1:2 with lines title '{label} D'"),
                    format!("'{n}' skip 1 using 1:3 with lines dashtype 2 title '{label} L'"),
                ]
            })
            .collect();
        writeln!(s, "plot {}", curves.join(", \\\n     ")).unwrap();
    }
    if phase && !names.is_empty() {
        writeln!(s, "\nset output '{stem}_phase.png'").unwrap();
        writeln!(s, "set xlabel 'D'\nset ylabel 'L'").unwrap();
        let curves: Vec<String> = names
            .iter()
            .map(|n| format!("'{n}' skip 1 using 2:3 with lines title '{}'", n.trim_end_matches(".csv")))
            .collect();
        writeln!(s, "plot {}", curves.join(", \\\n     ")).unwrap();
    }
    s
}
