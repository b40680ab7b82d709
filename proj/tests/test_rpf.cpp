#include <doctest.h>

#include <cmath>
#include <vector>

#include "opjhcpp/errors.hpp"
#include "opjhcpp/paths.hpp"
#include "opjhcpp/placement.hpp"
#include "opjhcpp/rpf.hpp"
#include "opjhcpp/topology.hpp"
#include "opjhcpp/vsdn.hpp"
#include "support/fixtures.hpp"

using namespace opjhcpp;

TEST_CASE("classification on the line4 worked examples") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  // source 0 -> hypervisor 2: route [0,1,2] contains controller 1;
  // 1.0 <= 2*1.0 + 1.0 -> blocked.
  CHECK(classify_request(table, Request{0, 0}, 1, 2, 1.0, 1.0) ==
        RequestOutcome::BlockedAtController);
  // source 3 -> hypervisor 2: route [3,2] excludes controller 0.
  CHECK(classify_request(table, Request{0, 3}, 0, 2, 1.0, 1.0) ==
        RequestOutcome::DirectToHypervisor);
}

TEST_CASE("blocking inequality is inclusive and boundary-exact") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  // controller 1, hypervisor 2: threshold = 2*1.0 + 1.0 = 3.0.
  CHECK(classify_request(table, Request{0, 0}, 1, 2, 3.0, 1.0) ==
        RequestOutcome::BlockedAtController);
  CHECK(classify_request(table, Request{0, 0}, 1, 2, 3.0000001, 1.0) ==
        RequestOutcome::ForwardedControllerToHypervisor);
}

TEST_CASE("controller at the source or at the hypervisor intercepts") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  // Endpoint inclusion: controller == source.
  CHECK(classify_request(table, Request{0, 0}, 0, 2, 100.0, 1.0) ==
        RequestOutcome::ForwardedControllerToHypervisor);
  // c == h: zero propagation, condition c_proc <= h_proc decides; equality blocks.
  CHECK(classify_request(table, Request{0, 3}, 2, 2, 1.0, 1.0) ==
        RequestOutcome::BlockedAtController);
  CHECK(classify_request(table, Request{0, 3}, 2, 2, 1.5, 1.0) ==
        RequestOutcome::ForwardedControllerToHypervisor);
}

TEST_CASE("outcome names are stable") {
  CHECK(std::string(request_outcome_name(RequestOutcome::BlockedAtController)) == "blocked");
  CHECK(std::string(request_outcome_name(RequestOutcome::ForwardedControllerToHypervisor)) ==
        "forwarded");
  CHECK(std::string(request_outcome_name(RequestOutcome::DirectToHypervisor)) == "direct");
}

TEST_CASE("simulation reproduces the worked line4 report") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  const std::vector<VsdnInstance> vsdns = {VsdnInstance{0, {0, 3}}};
  const LoadReport report = rpf_simulate(table, vsdns, 1, 2, 1.0, 1.0);
  CHECK(report.cs == 1);
  CHECK(report.cp == 0);
  CHECK(report.dptc == 1);
  CHECK(report.reduction == 0.5);
  REQUIRE(report.per_vsdn.size() == 1);
  CHECK(report.per_vsdn[0].cs == 1);
  CHECK(report.per_vsdn[0].dptc == 1);
}

TEST_CASE("reduction boundary cases") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  // All demands at the controller with the blocking condition satisfied.
  const std::vector<VsdnInstance> at_controller = {VsdnInstance{0, {1}},
                                                   VsdnInstance{1, {1}}};
  const LoadReport all_blocked = rpf_simulate(table, at_controller, 1, 2, 1.0, 1.0);
  CHECK(all_blocked.reduction == 1.0);
  CHECK(all_blocked.cp == 0);
  CHECK(all_blocked.dptc == 0);

  // Huge c_proc: nothing blocks.
  const std::vector<VsdnInstance> spread = {VsdnInstance{0, {0, 1, 2, 3}}};
  const LoadReport none_blocked = rpf_simulate(table, spread, 1, 2, 1e9, 1.0);
  CHECK(none_blocked.cs == 0);
  CHECK(none_blocked.reduction == 0.0);

  CHECK_THROWS_AS(rpf_simulate(table, std::vector<VsdnInstance>{}, 1, 2, 1.0, 1.0),
                  DegenerateError);
}

TEST_CASE("partition and per-vsdn sums hold across a scan") {
  const PhysicalTopology topo =
      parse_graphml(fixtures::slurp(fixtures::data_path("att_na.graphml")));
  const ScenarioConfig config =
      load_scenario(fixtures::slurp(fixtures::data_path("att_na.cfg")));
  const ShortestPathTable table = all_pairs_shortest(topo);
  const std::vector<VsdnInstance> vsdns = generate_vsdns(config, topo);
  long total_demands = 0;
  for (const VsdnInstance& vsdn : vsdns) {
    total_demands += static_cast<long>(vsdn.demand_nodes.size());
  }
  const CostTensor costs = compute_cost_tensor(table, vsdns, config.hypervisor_candidates,
                                               config.controller_candidates);
  const std::vector<ScanRow> rows =
      tradeoff_scan(table, vsdns, config.controller_candidates, config.hypervisor_candidates,
                    costs, config.c_proc_ms, config.h_proc_ms);
  REQUIRE(rows.size() == 16);
  int latency_flags[4] = {0, 0, 0, 0};
  int reduction_flags = 0;
  for (const ScanRow& row : rows) {
    CHECK(row.load.cs + row.load.cp + row.load.dptc == total_demands);
    CHECK(row.load.reduction >= 0.0);
    CHECK(row.load.reduction <= 1.0);
    long vsdn_cs = 0, vsdn_cp = 0, vsdn_dptc = 0;
    for (const VsdnLoad& load : row.load.per_vsdn) {
      vsdn_cs += load.cs;
      vsdn_cp += load.cp;
      vsdn_dptc += load.dptc;
    }
    CHECK(vsdn_cs == row.load.cs);
    CHECK(vsdn_cp == row.load.cp);
    CHECK(vsdn_dptc == row.load.dptc);
    latency_flags[0] += row.latency_opt_worst ? 1 : 0;
    latency_flags[1] += row.latency_opt_avg ? 1 : 0;
    latency_flags[2] += row.latency_opt_avgmax ? 1 : 0;
    latency_flags[3] += row.latency_opt_maxavg ? 1 : 0;
    reduction_flags += row.reduction_max ? 1 : 0;
  }
  for (const int count : latency_flags) CHECK(count == 1);
  CHECK(reduction_flags == 1);
}

TEST_CASE("scan rows come in lexicographic controller-major order") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  const std::vector<VsdnInstance> vsdns = {VsdnInstance{0, {0, 3}}};
  const CostTensor costs = compute_cost_tensor(table, vsdns, {1, 2}, {0, 1});
  const std::vector<ScanRow> rows =
      tradeoff_scan(table, vsdns, {0, 1}, {1, 2}, costs, 1.0, 1.0);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].controller == 0);
  CHECK(rows[0].hypervisor == 1);
  CHECK(rows[1].controller == 0);
  CHECK(rows[1].hypervisor == 2);
  CHECK(rows[2].controller == 1);
  CHECK(rows[2].hypervisor == 1);
  CHECK(rows[3].controller == 1);
  CHECK(rows[3].hypervisor == 2);

  // Forced-pair metrics for (c=0, h=1): latencies {2.0, 3.0}.
  CHECK(rows[0].metrics.worst == 3.0);
  CHECK(rows[0].metrics.avg == 2.5);
}

TEST_CASE("blocking monotonicity under processing-time sweeps") {
  const PhysicalTopology topo =
      parse_graphml(fixtures::slurp(fixtures::data_path("att_na.graphml")));
  const ScenarioConfig config =
      load_scenario(fixtures::slurp(fixtures::data_path("att_na.cfg")));
  const ShortestPathTable table = all_pairs_shortest(topo);
  const std::vector<VsdnInstance> vsdns = generate_vsdns(config, topo);

  long previous_cs = -1;
  for (int step = 0; step < 20; ++step) {
    const double c_proc = 0.5 * step;
    const LoadReport report = rpf_simulate(table, vsdns, 10, 5, c_proc, 2.0);
    if (previous_cs >= 0) CHECK(report.cs <= previous_cs);
    previous_cs = report.cs;
  }

  previous_cs = -1;
  for (int step = 0; step < 20; ++step) {
    const double h_proc = 0.5 * step;
    const LoadReport report = rpf_simulate(table, vsdns, 10, 5, 10.0, h_proc);
    if (previous_cs >= 0) CHECK(report.cs >= previous_cs);
    previous_cs = report.cs;
  }
}

TEST_CASE("trade-off detection") {
  SUBCASE("star topology with co-located best pair reports none") {
    // Hub 0, leaves 1..4. Candidates: controller {0, 1}, hypervisor {0, 1}.
    // Pair (0,0) is latency-optimal for every objective and blocks every
    // request (c_proc <= h_proc at zero distance), so it also maximizes
    // reduction: no trade-off.
    const PhysicalTopology topo = fixtures::star(4);
    const ShortestPathTable table = all_pairs_shortest(topo);
    const std::vector<VsdnInstance> vsdns = {VsdnInstance{0, {1, 2}},
                                             VsdnInstance{1, {3, 4}}};
    const CostTensor costs = compute_cost_tensor(table, vsdns, {0, 1}, {0, 1});
    const std::vector<ScanRow> rows =
        tradeoff_scan(table, vsdns, {0, 1}, {0, 1}, costs, 1.0, 1.0);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].latency_opt_worst);
    CHECK(rows[0].reduction_max);
    CHECK(rows[0].load.reduction == 1.0);
    CHECK_FALSE(tradeoff_observed(rows));
  }

  SUBCASE("singleton candidates trivially report none") {
    const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
    const std::vector<VsdnInstance> vsdns = {VsdnInstance{0, {0, 3}}};
    const CostTensor costs = compute_cost_tensor(table, vsdns, {1}, {0});
    const std::vector<ScanRow> rows = tradeoff_scan(table, vsdns, {0}, {1}, costs, 1.0, 1.0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].latency_opt_worst);
    CHECK(rows[0].latency_opt_avg);
    CHECK(rows[0].latency_opt_avgmax);
    CHECK(rows[0].latency_opt_maxavg);
    CHECK(rows[0].reduction_max);
    CHECK_FALSE(tradeoff_observed(rows));
  }

  SUBCASE("empty scan is an error") {
    CHECK_THROWS_AS(tradeoff_observed(std::vector<ScanRow>{}), DegenerateError);
  }
}

TEST_CASE("classification is a pure function of its inputs") {
  const ShortestPathTable table = all_pairs_shortest(fixtures::line4());
  const RequestOutcome first = classify_request(table, Request{0, 0}, 1, 2, 1.0, 1.0);
  for (int repeat = 0; repeat < 10; ++repeat) {
    CHECK(classify_request(table, Request{0, 0}, 1, 2, 1.0, 1.0) == first);
  }
}
