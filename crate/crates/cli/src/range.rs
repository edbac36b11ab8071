//! Integer ranges on the command line: `5`, `1-12`, `1..=12` or `100,500,2000`.

pub fn parse_range(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let bounds = part.split_once("..=").or_else(|| part.split_once('-'));
        match bounds {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}
