//! Discrete inf-sup constants of the fine/coarse L2 pairing for p = 2, 3,
//! L = 1..3 and n = 8..512 elements.

use mqstab::infsup::infsup_table;

fn main() {
    let elements = [8, 16, 32, 64, 128, 256, 512];
    print!("{:>3} {:>2}", "p", "L");
    for n in elements {
        print!(" {n:>7}");
    }
    println!();
    for p in [2, 3] {
        for l in [1, 2, 3] {
            print!("{p:>3} {l:>2}");
            for (_, _, _, beta) in infsup_table(&[p], &[l], &elements) {
                match beta {
                    Ok(b) => print!(" {b:>7.4}"),
                    Err(_) => print!(" {:>7}", "-"),
                }
            }
            println!();
        }
    }
}
