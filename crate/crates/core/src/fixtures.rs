//! Built-in example inputs.

use crate::error::{Error, Result};
use crate::io::{ComplexSpec, EntrySpec, InputFile, SymbolSpec, SCHEMA_VERSION};

/// Names accepted by [`fixture`]; `simplex-<n>` takes any `n` in `1..=8`.
pub const FIXTURE_NAMES: &[&str] = &[
    "torus-1",
    "hopf-rational",
    "hopf-generic",
    "hopf-irr",
    "square",
    "simplex-<n>",
    "overlap",
    "quadrant",
];

const DIGITS: &[(&str, &str)] = &[
    // e − 1
    ("s", "1.718281828459045235360287471352662497757"),
    // ln 2
    ("t", "0.693147180559945309417232121458176568075"),
    // π − 2
    ("u", "1.141592653589793238462643383279502884197"),
    // Euler's constant
    ("v", "0.577215664901532860606512090082402431042"),
];

fn symbol(name: &str, digits: &str) -> SymbolSpec {
    let (ip, fp) = digits.split_once('.').unwrap_or((digits, ""));
    let lo_num = format!("{ip}{fp}").trim_start_matches('0').to_string();
    let den = format!("1{}", "0".repeat(fp.len()));
    let hi_num = increment(&lo_num);
    SymbolSpec {
        name: name.into(),
        enclosure: Some([format!("{lo_num}/{den}"), format!("{hi_num}/{den}")]),
        sqrt: None,
    }
}

fn increment(digits: &str) -> String {
    let mut d: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
    let mut k = d.len();
    loop {
        if k == 0 {
            d.insert(0, 1);
            break;
        }
        k -= 1;
        if d[k] == 9 {
            d[k] = 0;
        } else {
            d[k] += 1;
            break;
        }
    }
    d.into_iter().map(|x| char::from(b'0' + x)).collect()
}

fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn entry(re: &str, im: &str) -> Vec<EntrySpec> {
    vec![EntrySpec {
        re: re.into(),
        im: im.into(),
    }]
}

fn base(name: &str, n: usize, vectors: Vec<Vec<String>>, m: usize, faces: Vec<Vec<usize>>) -> InputFile {
    InputFile {
        schema: SCHEMA_VERSION,
        name: Some(name.into()),
        symbols: Vec::new(),
        n,
        vectors,
        complex: ComplexSpec {
            m,
            maximal_faces: faces,
        },
        offsets: None,
        psi: None,
        points: None,
    }
}

fn triangle_with_ghost() -> Vec<Vec<usize>> {
    vec![vec![1, 2], vec![1, 3], vec![2, 3]]
}

/// `∂Δ^n` on `n + 1` vertices with the standard simplex fan, plus a ghost
/// vertex carrying the zero vector.
fn simplex(n: usize) -> InputFile {
    let m = n + 2;
    let mut vectors: Vec<Vec<String>> = (0..n)
        .map(|k| (0..n).map(|j| if j == k { "1" } else { "0" }.to_string()).collect())
        .collect();
    vectors.push(vec!["-1".to_string(); n]);
    vectors.push(vec!["0".to_string(); n]);
    let faces = (1..=n + 1)
        .map(|skip| (1..=n + 1).filter(|&v| v != skip).collect())
        .collect();
    let mut f = base(&format!("simplex-{n}"), n, vectors, m, faces);
    f.offsets = Some(vec!["1".to_string(); m]);
    let mut psi: Vec<Vec<EntrySpec>> = (0..=n).map(|_| entry("0", "1")).collect();
    psi.push(entry("1", "0"));
    f.psi = Some(psi);
    f
}

pub fn fixture(name: &str) -> Result<InputFile> {
    let f = match name {
        "torus-1" => {
            let mut f = base(name, 0, vec![vec![], vec![]], 2, vec![]);
            f.psi = Some(vec![entry("0", "1"), entry("1", "0")]);
            f
        }
        "hopf-rational" => {
            let mut f = simplex(2);
            f.name = Some(name.into());
            f
        }
        "hopf-generic" => {
            let vectors = vec![
                strs(&["1", "0"]),
                strs(&["0", "1"]),
                strs(&["-s", "-u"]),
                strs(&["-t", "-v"]),
            ];
            let mut f = base(name, 2, vectors, 4, triangle_with_ghost());
            f.symbols = DIGITS.iter().map(|(n, d)| symbol(n, d)).collect();
            f.psi = Some(vec![entry("t", "s"), entry("v", "u"), entry("0", "1"), entry("1", "0")]);
            f
        }
        "hopf-irr" => {
            let vectors = vec![
                strs(&["1", "0"]),
                strs(&["0", "1"]),
                strs(&["-s", "-s"]),
                strs(&["-t", "-t"]),
            ];
            let mut f = base(name, 2, vectors, 4, triangle_with_ghost());
            f.symbols = DIGITS[..2].iter().map(|(n, d)| symbol(n, d)).collect();
            f.psi = Some(vec![entry("t", "s"), entry("t", "s"), entry("0", "1"), entry("1", "0")]);
            f
        }
        "square" => {
            let vectors = vec![
                strs(&["1", "0"]),
                strs(&["0", "1"]),
                strs(&["-1", "0"]),
                strs(&["0", "-1"]),
            ];
            let faces = vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]];
            let mut f = base(name, 2, vectors, 4, faces);
            f.offsets = Some(strs(&["1", "1", "1", "1"]));
            f.psi = Some(vec![entry("1", "0"), entry("0", "1"), entry("1", "0"), entry("0", "1")]);
            f
        }
        "overlap" => {
            let vectors = vec![strs(&["1", "0"]), strs(&["0", "1"]), strs(&["1", "1"])];
            base(name, 2, vectors, 3, vec![vec![1, 2], vec![1, 3]])
        }
        "quadrant" => base(name, 2, vec![strs(&["1", "0"]), strs(&["0", "1"])], 2, vec![vec![1, 2]]),
        other => match other.strip_prefix("simplex-").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=8).contains(&n) => simplex(n),
            _ => return Err(Error::Input(format!("unknown fixture `{other}`"))),
        },
    };
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for name in [
            "torus-1",
            "hopf-rational",
            "hopf-generic",
            "hopf-irr",
            "square",
            "simplex-1",
            "simplex-4",
            "overlap",
            "quadrant",
        ] {
            let f = fixture(name).unwrap();
            let back = InputFile::from_json(&f.to_json()).unwrap();
            assert_eq!(back, f);
            back.problem().unwrap();
        }
        assert!(fixture("simplex-9").is_err());
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn enclosures_bracket_the_digits() {
        let s = symbol("s", "1.25");
        assert_eq!(s.enclosure, Some(["125/100".to_string(), "126/100".to_string()]));
        assert_eq!(increment("199"), "200");
        assert_eq!(increment("99"), "100");
    }
}
