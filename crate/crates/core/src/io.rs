//! Newline-delimited JSON corpora.

use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

/// Reads whitespace-separated JSON values: a single object or one per line.
pub fn read_json_stream<T: DeserializeOwned, R: Read>(reader: R) -> impl Iterator<Item = Result<T>> {
    serde_json::Deserializer::from_reader(reader)
        .into_iter::<T>()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
}

/// Writes each item as one compact JSON line.
pub fn write_ndjson<'a, T, W, I>(mut writer: W, items: I) -> std::io::Result<()>
where
    T: Serialize + 'a,
    W: Write,
    I: IntoIterator<Item = &'a T>,
{
    for item in items {
        serde_json::to_writer(&mut writer, item)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::LatticePolygon;

    #[test]
    fn round_trip() {
        let ps = vec![
            LatticePolygon::from_coords(&[(0, -1), (3, 2), (-1, 2)]).unwrap(),
            LatticePolygon::from_coords(&[(1, 0), (0, 1), (-1, -1)]).unwrap(),
        ];
        let mut buf = Vec::new();
        write_ndjson(&mut buf, &ps).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 2);
        let back: Vec<LatticePolygon> = read_json_stream(buf.as_slice()).collect::<Result<_>>().unwrap();
        assert_eq!(back, ps);
    }

    #[test]
    fn single_pretty_object() {
        let text = "{\n  \"vertices\": [[0, -1],\n [3, 2], [-1, 2]]\n}\n";
        let ps: Vec<LatticePolygon> = read_json_stream(text.as_bytes()).collect::<Result<_>>().unwrap();
        assert_eq!(ps.len(), 1);
    }

    #[test]
    fn malformed_input() {
        let mut it = read_json_stream::<LatticePolygon, _>(&b"{\"vertices\": [[1, 2]"[..]);
        assert!(matches!(it.next(), Some(Err(Error::Parse(_)))));
        let mut it = read_json_stream::<LatticePolygon, _>(&b"{\"vertices\": [[0,0],[1,1],[2,2]]}"[..]);
        assert!(matches!(it.next(), Some(Err(Error::Parse(m))) if m.contains("degenerate polygon")));
    }
}
