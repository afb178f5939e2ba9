use std::path::PathBuf;
use std::process::Command;

use tbisp::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};
use tbisp_core::text::{parse_diffop, parse_polyexp, parse_tdiff, parse_waveform, parse_zpoly};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn invoke(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut full = vec!["tbisp"];
    full.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(full, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const DELTA_0: &str = r#"{"distributions":[[{"lambda":"0","order":0,"coeff":"1"}]]}"#;

#[test]
fn tau_of_delta_at_zero_is_one() {
    let (code, out, _) = invoke(&["tau"], DELTA_0);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "1");
}

#[test]
fn soliton_qpoly() {
    let (code, out, _) = invoke(&["qpoly", &data("soliton.json")], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "z^4-2*z^3-z^2+2*z");
    assert_eq!(parse_zpoly(out.trim()).unwrap(), parse_zpoly("z*(z-1)*(z+1)*(z-2)").unwrap());
}

#[test]
fn calogero_moser_psi_and_verify() {
    let (code, out, _) = invoke(&["psi", &data("calogero_moser.json")], "");
    assert_eq!(code, EXIT_OK);
    let expected = parse_waveform("(1 + (2 + x - (2*x + x^2)*z)/(x^2*z^2))*exp(x*z)").unwrap();
    assert_eq!(parse_waveform(out.trim()).unwrap(), expected);
    let (code, out, _) = invoke(&["verify", &data("calogero_moser.json")], "");
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 3, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn emitted_forms_parse_back() {
    let cm = data("calogero_moser.json");
    let (_, tau, _) = invoke(&["tau", &cm], "");
    assert_eq!(parse_polyexp(tau.trim()).unwrap(), parse_polyexp("x^2*exp(x)").unwrap());
    let (_, factor, _) = invoke(&["factor", &cm], "");
    for line in factor.lines() {
        if let Some(op) = line.strip_prefix("kbar = ").or_else(|| line.strip_prefix("qbar = ")) {
            parse_diffop(op).unwrap();
        }
    }
    let (_, lambda, _) = invoke(&["--g", "x*exp(-x)", "lambda", &cm], "");
    let op = lambda.lines().find_map(|l| l.strip_prefix("lambda = ")).unwrap();
    let printed = parse_tdiff(op).unwrap();
    let (_, again, _) = invoke(&["--g", "x*exp(-x)", "lambda", &cm], "");
    assert_eq!(lambda, again);
    assert!(lambda.contains("shift_free = true"));
    assert_eq!(parse_tdiff(&tbisp_core::text::Render::text(&printed)).unwrap(), printed);
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["--format", "structured", "ad", "--m", "2", &data("soliton.json")];
    let (c1, o1, _) = invoke(&args, "");
    let (c2, o2, _) = invoke(&args, "");
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(o1, o2);
    let v: serde_json::Value = serde_json::from_str(&o1).unwrap();
    assert_eq!(v["command"], "ad");
    assert_eq!(v["pass"], true);
}

#[test]
fn malformed_input_exits_with_input_code() {
    for bad in ["{bad", r#"{"distributions":[]}"#, r#"{"distributions":[[{"lambda":"q","order":0,"coeff":"1"}]]}"#] {
        let (code, _, err) = invoke(&["tau"], bad);
        assert_eq!(code, EXIT_INPUT, "{bad}");
        assert!(!err.is_empty());
    }
    let (code, _, _) = invoke(&["--g", "exp(", "factor", &data("soliton.json")], "");
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["--tol", "0", "verify", &data("soliton.json")], "");
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["nonsense"], "");
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["tau", "/nonexistent/file.json"], "");
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn failed_check_exits_with_verify_code() {
    let (code, out, _) = invoke(&["--tol", "1e-300", "verify", &data("soliton.json")], "");
    assert_eq!(code, EXIT_VERIFY, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn latex_format() {
    let (code, out, _) = invoke(&["--format", "latex", "qpoly", &data("soliton.json")], "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "z^{4}-2z^{3}-z^{2}+2z");
    let (code, out, _) = invoke(&["latex", &data("calogero_moser.json")], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("e^{x}"), "{out}");
}

#[test]
fn binary_reads_stdin_and_reports_exit_code() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_tbisp"))
        .arg("wilson")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(DELTA_0.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "true");
}
