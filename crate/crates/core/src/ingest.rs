//! GTFS-lite ingestion: `trips.txt` and `stop_times.txt` (plus an optional
//! `stops.txt`) become a temporal graph with one edge per consecutive stop
//! pair of every trip.
//!
//! Calendars, frequencies, transfers and footpaths are not read. Times past
//! `24:00:00` stay as seconds beyond one day.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, TemporalGraph, VertexId};
use crate::time::Timestamp;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopTime {
    pub trip_id: String,
    pub stop_id: String,
    pub stop_sequence: u32,
    /// Seconds since midnight of the service day.
    pub arrival: Option<u32>,
    pub departure: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GtfsLiteFeed {
    pub stops: Vec<String>,
    pub trips: Vec<String>,
    pub stop_times: Vec<StopTime>,
}

/// Output of [`gtfs_to_temporal`].
#[derive(Debug, Clone)]
pub struct Conversion<T> {
    pub graph: TemporalGraph<T>,
    /// `labels[v]` is the stop id of vertex `v`.
    pub labels: Vec<String>,
    /// Consecutive stop pairs skipped because their duration was not positive.
    pub dropped_nonpositive: usize,
    /// Edges identical in `(u, v, t, λ)` to an earlier edge; kept in the graph.
    pub duplicate_edges: usize,
}

/// Parses `HH:MM:SS` (hours may exceed 23 and may be a single digit) into seconds.
pub fn parse_gtfs_time(s: &str) -> Result<u32> {
    let bad = || Error::Gtfs(format!("unparseable time {s:?}"));
    let mut parts = s.trim().split(':');
    let (h, m, sec) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some(h), Some(m), Some(sec), None) => (h, m, sec),
        _ => return Err(bad()),
    };
    let field = |p: &str, width_ok: bool| -> Result<u32> {
        if p.is_empty() || !width_ok || !p.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        p.parse().map_err(|_| bad())
    };
    let h = field(h, h.len() <= 3)?;
    let m = field(m, m.len() == 2)?;
    let sec = field(sec, sec.len() == 2)?;
    if m >= 60 || sec >= 60 {
        return Err(bad());
    }
    Ok(h * 3600 + m * 60 + sec)
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(input)
}

fn column(headers: &csv::StringRecord, file: &str, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim_start_matches('\u{feff}') == name)
        .ok_or_else(|| Error::Gtfs(format!("{file}: missing column {name}")))
}

fn ids_from<R: Read>(input: R, file: &str, id_column: &str) -> Result<Vec<String>> {
    let mut rdr = reader(input);
    let col = column(rdr.headers()?, file, id_column)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        out.push(rec.get(col).unwrap_or("").to_string());
    }
    Ok(out)
}

pub fn read_stops<R: Read>(input: R) -> Result<Vec<String>> {
    ids_from(input, "stops.txt", "stop_id")
}

pub fn read_trips<R: Read>(input: R) -> Result<Vec<String>> {
    ids_from(input, "trips.txt", "trip_id")
}

pub fn read_stop_times<R: Read>(input: R) -> Result<Vec<StopTime>> {
    let file = "stop_times.txt";
    let mut rdr = reader(input);
    let headers = rdr.headers()?.clone();
    let trip = column(&headers, file, "trip_id")?;
    let stop = column(&headers, file, "stop_id")?;
    let seq = column(&headers, file, "stop_sequence")?;
    let arr = column(&headers, file, "arrival_time")?;
    let dep = column(&headers, file, "departure_time")?;
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let get = |c: usize| rec.get(c).unwrap_or("");
        let optional_time = |c: usize| -> Result<Option<u32>> {
            let v = get(c);
            if v.is_empty() {
                Ok(None)
            } else {
                parse_gtfs_time(v).map(Some)
            }
        };
        let stop_sequence = get(seq).parse().map_err(|_| {
            Error::Gtfs(format!(
                "{file} row {}: bad stop_sequence {:?}",
                i + 2,
                get(seq)
            ))
        })?;
        out.push(StopTime {
            trip_id: get(trip).to_string(),
            stop_id: get(stop).to_string(),
            stop_sequence,
            arrival: optional_time(arr)?,
            departure: optional_time(dep)?,
        });
    }
    Ok(out)
}

impl GtfsLiteFeed {
    /// Reads a feed directory. `trips.txt` and `stop_times.txt` are required.
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let open = |name: &str| {
            fs::File::open(dir.join(name)).map_err(|e| match e.kind() {
                io::ErrorKind::NotFound => {
                    Error::Gtfs(format!("missing {name} in {}", dir.display()))
                }
                _ => Error::Io(e),
            })
        };
        let stops = match fs::File::open(dir.join("stops.txt")) {
            Ok(f) => read_stops(f)?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e.into()),
        };
        let trips = read_trips(open("trips.txt")?)?;
        let stop_times = read_stop_times(open("stop_times.txt")?)?;
        Ok(GtfsLiteFeed {
            stops,
            trips,
            stop_times,
        })
    }
}

/// Converts a feed into a temporal graph.
///
/// Vertices are stop ids in first-appearance order (`stops.txt` first, then
/// `stop_times.txt`). Trips are emitted in `trips.txt` order, each along its
/// stop sequence: the edge from stop `a` to the next stop `b` departs at `a`'s
/// departure and lasts until `b`'s arrival. A missing departure falls back to
/// the arrival and vice versa.
pub fn gtfs_to_temporal<T: Timestamp>(feed: &GtfsLiteFeed) -> Result<Conversion<T>> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<&str, VertexId> = HashMap::new();
    for id in feed
        .stops
        .iter()
        .chain(feed.stop_times.iter().map(|st| &st.stop_id))
    {
        index.entry(id.as_str()).or_insert_with(|| {
            labels.push(id.clone());
            (labels.len() - 1) as VertexId
        });
    }

    let trip_pos: HashMap<&str, usize> = feed
        .trips
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_str(), i))
        .rev()
        .collect();
    let mut per_trip: Vec<Vec<&StopTime>> = vec![Vec::new(); feed.trips.len()];
    for st in &feed.stop_times {
        let pos = trip_pos.get(st.trip_id.as_str()).ok_or_else(|| {
            Error::Gtfs(format!(
                "stop_times references unknown trip {:?}",
                st.trip_id
            ))
        })?;
        per_trip[*pos].push(st);
    }

    let time =
        |v: u32| T::from_u64(v as u64).ok_or_else(|| Error::Gtfs(format!("time {v} out of range")));
    let mut edges = Vec::new();
    let mut dropped_nonpositive = 0;
    for (trip, rows) in feed.trips.iter().zip(per_trip.iter_mut()) {
        rows.sort_by_key(|st| st.stop_sequence);
        for pair in rows.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a.stop_sequence == b.stop_sequence {
                return Err(Error::Gtfs(format!(
                    "trip {trip:?}: stop_sequence {} is not strictly increasing",
                    b.stop_sequence
                )));
            }
            let depart = a.departure.or(a.arrival);
            let arrive = b.arrival.or(b.departure);
            let (Some(depart), Some(arrive)) = (depart, arrive) else {
                return Err(Error::Gtfs(format!("trip {trip:?}: stop without any time")));
            };
            if arrive <= depart {
                dropped_nonpositive += 1;
                continue;
            }
            edges.push(TemporalEdge::new(
                index[a.stop_id.as_str()],
                index[b.stop_id.as_str()],
                time(depart)?,
                time(arrive - depart)?,
            ));
        }
    }
    if dropped_nonpositive > 0 {
        log::warn!("dropped {dropped_nonpositive} connections with non-positive duration");
    }
    let mut seen = HashSet::new();
    let duplicate_edges = edges.iter().filter(|e| !seen.insert(**e)).count();

    let graph = TemporalGraph::new(labels.len(), edges)?;
    Ok(Conversion {
        graph,
        labels,
        dropped_nonpositive,
        duplicate_edges,
    })
}

impl<T: Timestamp> Conversion<T> {
    /// Edge list with a provenance header; byte-stable for a given feed.
    pub fn write_edge_list<W: Write>(&self, out: W) -> io::Result<()> {
        let dropped = format!("dropped_nonpositive {}", self.dropped_nonpositive);
        let dupes = format!("duplicate_edges {}", self.duplicate_edges);
        self.graph
            .write_edge_list(out, &["converted from a GTFS-lite feed", &dropped, &dupes])
    }

    /// The `labels.tsv` sidecar: `vertex<TAB>stop_id`.
    pub fn write_labels<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "vertex\tstop_id")?;
        for (v, label) in self.labels.iter().enumerate() {
            writeln!(out, "{v}\t{label}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feed(stop_times: &str) -> GtfsLiteFeed {
        let trips = read_trips("route_id,service_id,trip_id\nr,s,T1\nr,s,T2\n".as_bytes()).unwrap();
        GtfsLiteFeed {
            stops: vec![],
            trips,
            stop_times: read_stop_times(stop_times.as_bytes()).unwrap(),
        }
    }

    const HEADER: &str = "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n";

    #[test]
    fn time_parsing() {
        assert_eq!(parse_gtfs_time("08:00:00").unwrap(), 28800);
        assert_eq!(parse_gtfs_time("8:10:00").unwrap(), 29400);
        assert_eq!(parse_gtfs_time("25:30:01").unwrap(), 91801);
        for bad in [
            "",
            "08:00",
            "08:60:00",
            "08:00:61",
            "aa:00:00",
            "08:0:00",
            "08:00:00:00",
        ] {
            assert!(parse_gtfs_time(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn three_stop_trip() {
        let f = feed(&format!(
            "{HEADER}T1,,08:00:00,A,1\nT1,08:09:00,08:10:00,B,2\nT1,08:20:00,,C,3\n"
        ));
        let c = gtfs_to_temporal::<u32>(&f).unwrap();
        assert_eq!(c.labels, vec!["A", "B", "C"]);
        assert_eq!(
            c.graph.edges(),
            &[
                TemporalEdge::new(0, 1, 28800, 540),
                TemporalEdge::new(1, 2, 29400, 600)
            ]
        );
        assert_eq!(c.dropped_nonpositive, 0);
    }

    #[test]
    fn rows_are_ordered_by_sequence() {
        let f = feed(&format!(
            "{HEADER}T1,08:20:00,,C,30\nT1,,08:00:00,A,1\nT1,08:09:00,08:10:00,B,7\n"
        ));
        let c = gtfs_to_temporal::<u32>(&f).unwrap();
        assert_eq!(c.graph.edge_count(), 2);
        assert_eq!(c.labels, vec!["C", "A", "B"]);
        assert_eq!(c.graph.edges()[0], TemporalEdge::new(1, 2, 28800, 540));
    }

    #[test]
    fn single_stop_trip_has_no_edges() {
        let c =
            gtfs_to_temporal::<u32>(&feed(&format!("{HEADER}T1,08:00:00,08:00:00,A,1\n"))).unwrap();
        assert_eq!(c.graph.edge_count(), 0);
        assert_eq!(c.graph.vertex_count(), 1);
    }

    #[test]
    fn zero_duration_is_dropped() {
        let f = feed(&format!(
            "{HEADER}T1,,08:00:00,A,1\nT1,08:00:00,08:01:00,B,2\nT1,08:05:00,,C,3\n"
        ));
        let c = gtfs_to_temporal::<u32>(&f).unwrap();
        assert_eq!(c.dropped_nonpositive, 1);
        assert_eq!(c.graph.edges(), &[TemporalEdge::new(1, 2, 28860, 240)]);
    }

    #[test]
    fn errors() {
        let unknown = feed(&format!("{HEADER}T9,,08:00:00,A,1\n"));
        assert!(matches!(
            gtfs_to_temporal::<u32>(&unknown),
            Err(Error::Gtfs(_))
        ));
        let dup = feed(&format!("{HEADER}T1,,08:00:00,A,1\nT1,08:05:00,,B,1\n"));
        assert!(gtfs_to_temporal::<u32>(&dup).is_err());
        assert!(read_stop_times(format!("{HEADER}T1,,8am,A,1\n").as_bytes()).is_err());
        assert!(read_stop_times("trip_id,stop_id\nT1,A\n".as_bytes()).is_err());
    }

    #[test]
    fn duplicates_are_kept_and_counted() {
        let f = feed(&format!(
            "{HEADER}T1,,08:00:00,A,1\nT1,08:05:00,,B,2\nT2,,08:00:00,A,1\nT2,08:05:00,,B,2\n"
        ));
        let c = gtfs_to_temporal::<u32>(&f).unwrap();
        assert_eq!(c.graph.edge_count(), 2);
        assert_eq!(c.duplicate_edges, 1);
    }

    #[test]
    fn quoted_fields_and_bom() {
        let text = "\u{feff}trip_id,arrival_time,departure_time,stop_id,stop_sequence\n\"T1\",,08:00:00,\"A,1\",1\nT1,08:05:00,,B,2\n";
        let f = feed(text);
        let c = gtfs_to_temporal::<u32>(&f).unwrap();
        assert_eq!(c.labels, vec!["A,1", "B"]);
    }
}
