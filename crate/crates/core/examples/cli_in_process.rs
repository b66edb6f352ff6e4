// Drive the command line in process and read its JSON report.

pub fn run_example() -> polartree::Result<String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["polartree", "verify", "--fixture", "ex8.2", "--json"];
    let code = polartree::cli::run(argv, &mut out, &mut err);
    let text = String::from_utf8_lossy(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("JSON report");
    Ok(format!(
        "exit {code}; format {}; verification pass = {}\n",
        doc["format"], doc["verification"]["pass"]
    ))
}

#[allow(dead_code)]
fn main() -> polartree::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
