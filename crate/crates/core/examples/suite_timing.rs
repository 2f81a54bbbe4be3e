use std::time::Instant;

use swancond::verify::{run, Suite, VerifyConfig};

fn main() {
    for s in Suite::ALL {
        let t = Instant::now();
        let r = run(&[s], &VerifyConfig::default()).unwrap();
        let tally = r.tally();
        println!("{:10} rows {:4} pass {:4} fail {:3} unc {:3} {:?}", s.name(), r.rows.len(), tally.pass, tally.fail, tally.uncertified, t.elapsed());
        for row in r.rows.iter().filter(|x| x.status != swancond::verify::Status::Pass) {
            println!("   {row:?}");
        }
    }
}
