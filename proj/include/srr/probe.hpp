#pragma once

#include <cstdint>

namespace srr {

// Work counters for a single query. "nodes_visited" counts tree nodes whose
// candidate sets were examined (emptiness tests and answer extraction), not
// bookkeeping walks; asymptotic claims are validated against these counters
// rather than wall-clock time.
struct ProbeCounters {
  uint64_t nodes_visited = 0;
  uint64_t rmq_probes = 0;
  uint64_t pred_probes = 0;
  uint64_t points_decoded = 0;
  uint64_t decode_hops = 0;
  uint64_t stored_reads = 0;

  void add(const ProbeCounters& o) {
    nodes_visited += o.nodes_visited;
    rmq_probes += o.rmq_probes;
    pred_probes += o.pred_probes;
    points_decoded += o.points_decoded;
    decode_hops += o.decode_hops;
    stored_reads += o.stored_reads;
  }
};

// Per-iterator bookkeeping shared by every stream implementation. Fields that
// do not apply to a given engine stay zero.
struct QueryStats {
  ProbeCounters probes;
  uint32_t streams_opened = 0;    // per-node streams started
  uint32_t streams_drained = 0;   // of those, ran to exhaustion
  uint32_t escalations = 0;       // group scans upgraded to a full enumeration
  uint32_t escalations_under_sample_threshold = 0;
};

}  // namespace srr
