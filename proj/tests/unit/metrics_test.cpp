#include "example_sets.hpp"

#include <xsdprune/metrics.hpp>

#include <doctest.h>
#include <json.hpp>

using namespace xsdprune;
namespace ex = xsdprune::testing::example;

namespace {

  // The published size table for the sensor-service schema stack: the ten
  // cardinalities of the full and of the simplified set, then the printed
  // Total_C and Total_R.
  constexpr std::array<std::size_t, 10> table_full = {846, 2020, 400, 28, 39,
                                                      2420, 968, 739, 490, 290};
  constexpr std::array<std::size_t, 10> table_simplified = {112, 183, 22, 7, 3,
                                                            205, 63, 81, 74, 17};
  constexpr std::size_t printed_total_c_full = 3333;
  constexpr std::size_t printed_total_c_simplified = 327;
  constexpr std::size_t printed_total_r_full = 4617;
  constexpr std::size_t printed_total_r_simplified = 423;

} // namespace

TEST_SUITE("metrics") {

  TEST_CASE("empty set") {
    auto m = compute_metrics(schema_set{});
    for (auto v : m.values()) CHECK(v == 0);
  }

  TEST_CASE("the example schema and the instance 1 subset") {
    auto full = compute_metrics(ex::full_set());
    CHECK(full.values() ==
          std::array<std::size_t, 12>{4, 5, 0, 0, 0, 5, 1, 3, 1, 0, 9, 10});
    CHECK(full.global_elements == 2);
    CHECK(full.inner_elements == 3);
    CHECK(full.builtin_types == 1);
    auto reduced = compute_metrics(ex::instance1_subset());
    CHECK(reduced.total_c() == 6);
    CHECK(reduced.total_r() == 5);
    auto no_builtins = compute_metrics(ex::full_set(), false);
    CHECK(no_builtins.types == 3);
    CHECK(no_builtins.is_of_type == 5);
    CHECK(no_builtins.total_c() == 8);
  }

  TEST_CASE("component totals of the published table") {
    auto full = metrics_from_values(table_full);
    auto simplified = metrics_from_values(table_simplified);
    CHECK(full.total_c() == printed_total_c_full);
    CHECK(simplified.total_c() == printed_total_c_simplified);
    auto report = compare_metrics(full, simplified);
    REQUIRE(report.rows.size() == 12);
    CHECK(report.rows[10].label == "Total_C");
    CHECK(format_reduction(report.rows[10].reduction) == "90.2%");
    CHECK(report.rows[0].label == "|T|");
    CHECK(format_reduction(report.rows[0].reduction) == "86.8%");
  }

  TEST_CASE("relation totals sum all five relations") {
    // The printed Total_R equals the sum of the first four relations only;
    // the sum of all five is kept as the definition.
    auto full = metrics_from_values(table_full);
    auto simplified = metrics_from_values(table_simplified);
    CHECK(full.total_r() == 4907);
    CHECK(simplified.total_r() == 440);
    CHECK(full.total_r() - full.is_in_substitution_group == printed_total_r_full);
    CHECK(simplified.total_r() - simplified.is_in_substitution_group ==
          printed_total_r_simplified);
  }

  TEST_CASE("reductions") {
    auto m = compute_metrics(ex::full_set());
    for (const auto& row : compare_metrics(m, m).rows) {
      CAPTURE(row.label);
      if (row.full == 0)
        CHECK(format_reduction(row.reduction) == "n/a");
      else
        CHECK(format_reduction(row.reduction) == "0.0%");
    }
    auto r = compare_metrics(m, compute_metrics(ex::instance1_subset()));
    CHECK(r.rows[10].full == 9);
    CHECK(r.rows[10].reduced == 6);
    CHECK(format_reduction(r.rows[10].reduction) == "33.3%");
    CHECK(r.rows[11].full == 10);
    CHECK(r.rows[11].reduced == 5);
    CHECK(format_reduction(r.rows[11].reduction) == "50.0%");
    CHECK(format_reduction(std::nullopt) == "n/a");
    CHECK(format_reduction(1.0) == "100.0%");
  }

  TEST_CASE("rendering") {
    auto report = compare_metrics(metrics_from_values(table_full),
                                  metrics_from_values(table_simplified));
    auto text = render_comparison(report, report_format::text);
    CHECK(text.find("Total_C") != std::string::npos);
    CHECK(text.find("3333") != std::string::npos);
    CHECK(text.find("90.2%") != std::string::npos);
    // rows keep the table order
    CHECK(text.find("|T|") < text.find("|E|"));
    CHECK(text.find("|isInSubstitutionGroup|") < text.find("Total_C"));

    auto csv = render_comparison(report, report_format::csv);
    CHECK(csv.rfind("metric,full,reduced,reduction\n", 0) == 0);
    CHECK(csv.find("Total_C,3333,327,90.2%\n") != std::string::npos);

    auto json = nlohmann::json::parse(render_comparison(report, report_format::json));
    CHECK(json["comparison"].size() == 12);
    CHECK(json["comparison"][10]["metric"] == "Total_C");
    CHECK(json["comparison"][10]["reduction"] == "90.2%");

    auto m = compute_metrics(ex::full_set());
    auto mj = nlohmann::json::parse(render_metrics(m, report_format::json));
    CHECK(mj["breakdown"]["inner_elements"] == 3);
    CHECK(render_metrics(m, report_format::csv).find("Total_R,10\n") != std::string::npos);
    CHECK(report_format_from_name("csv") == report_format::csv);
    CHECK_FALSE(report_format_from_name("xml").has_value());
  }

}
