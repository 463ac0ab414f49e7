//! Checks a hand-written script and reports where it goes wrong.

use rearrange::rearrangement::check_sequence;
use rearrange::{parse_tree, OperationSequence};

fn main() -> rearrange::Result<()> {
    let t1 = parse_tree("((d,e,f)b,(g,h)c)a;")?;
    let t2 = parse_tree("((b,e)d,(f,g,h)c)a;")?;
    let scripts = [
        "perm b>d d>b\nmove f d c\n",
        "move b a d\nmove d b a\n",
        "move d b a\nmove e b d\n",
    ];
    for text in scripts {
        let seq = OperationSequence::parse_script(text)?;
        println!("{:<40} {}", text.trim().replace('\n', "; "), check_sequence(&t1, &seq, &t2));
    }
    Ok(())
}
