use std::process::ExitCode;

use weitzenbock::checks::{run_all, CheckConfig};

fn main() -> ExitCode {
    let outcomes = run_all(&CheckConfig::default());
    let mut ok = true;
    for o in &outcomes {
        println!("{}", o.summary());
        if !o.passed {
            ok = false;
        }
        if o.elapsed > o.budget {
            println!("criterion {} exceeded its runtime budget", o.id);
            ok = false;
        }
    }
    if ok {
        println!("acceptance: all {} criteria passed", outcomes.len());
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
