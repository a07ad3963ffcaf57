use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::ffi::CString;

fn run(code: &str) {
    Python::attach(|py| {
        let module = pyo3::wrap_pymodule!(pybinowords::binowords_module)(py);
        let globals = PyDict::new(py);
        globals.set_item("bw", module).unwrap();
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python snippet failed");
        }
    });
}

#[test]
fn words_and_coefficients() {
    run(r#"
assert bw.binomial_coefficient("0110", "01") == 2
assert bw.binomial_coefficient("abcabc", "abc") == 4
assert bw.equivalent("0110", "1001", 2) and not bw.equivalent("0110", "1001", 3)
sig = bw.signature("0110", 2)
assert sig[""] == 1 and sig["0"] == 2 and sig["10"] == 2
"#);
}

#[test]
fn generators_and_complexity() {
    run(r#"
tm = bw.Generator("tm")
assert tm.prefix(8) == "01101001"
assert tm.id == "tm" and tm.alphabet == "01"
b2 = tm.binomial_complexity(2, 16)
assert (b2[6], b2[8]) == (8, 9)
assert bw.Generator("h").prefix(22) == "0112122122212222122222"
assert bw.Generator("champ").binomial_complexity(1, 6) == [1, 2, 3, 4, 5, 6, 7]
"#);
}

#[test]
fn errors_map_to_python_exceptions() {
    run(r#"
for bad in (lambda: bw.Generator("nope"), lambda: bw.tm_decode("0000", 1), lambda: bw.Morphism("0 => 1")):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("no error")
try:
    bw.Generator("fib", prefix_cap=100).factor_complexity(2)
except bw.StabilizationError:
    pass
else:
    raise AssertionError("no stabilization error")
"#);
}
