#include "example_sets.hpp"

#include <xsdprune/error.hpp>
#include <xsdprune/schema_set.hpp>

#include <doctest.h>

using namespace xsdprune;
namespace ex = xsdprune::testing::example;

TEST_SUITE("schema_model") {

  TEST_CASE("qualified names compare both fields exactly") {
    CHECK(qualified_name("urn:a", "x") == qualified_name("urn:a", "x"));
    CHECK(qualified_name("urn:a", "x") != qualified_name("urn:b", "x"));
    CHECK(qualified_name("", "x") != qualified_name("urn:a", "x"));
    CHECK(qualified_name("urn:a", "x").clark() == "{urn:a}x");
    CHECK_THROWS_AS(qualified_name("", "1abc"), model_error);
    CHECK_THROWS_AS(qualified_name("", "a:b"), model_error);
    CHECK_THROWS_AS(qualified_name("", ""), model_error);
    CHECK(is_ncname("_a-b.c1"));
    CHECK_FALSE(is_ncname("-a"));
  }

  TEST_CASE("inner components need an element/attribute kind and a global container") {
    auto base = ex::type("Base");
    auto item = component_ref::inner(component_kind::element, base, "x");
    CHECK_FALSE(item.is_global());
    CHECK(item.container() == base);
    CHECK_THROWS_AS(component_ref::inner(component_kind::type, base, "x"),
                    model_error);
    CHECK_THROWS_AS(component_ref::inner(component_kind::element, item, "y"),
                    model_error);
    auto e = ex::global_element("Container");
    CHECK_THROWS_AS(component_ref::inner(component_kind::element, e, "y"),
                    model_error);
  }

  TEST_CASE("component tokens round-trip") {
    auto g = component_ref::global(component_kind::model_group,
                                   qualified_name("urn:g", "G"));
    auto inner = component_ref::inner(component_kind::element, g, "e", 2);
    CHECK(inner.token() == "{urn:g}G(group):e#2");
    CHECK(parse_component_token(component_kind::element, inner.token()) == inner);
    auto ag = component_ref::global(component_kind::attribute_group,
                                    qualified_name("", "AG"));
    auto a = component_ref::inner(component_kind::attribute, ag, "at");
    CHECK(a.token() == "{}AG(attributeGroup):at");
    CHECK(parse_component_token(component_kind::attribute, a.token()) == a);
    CHECK(ex::inner_element("ContainerType", "item").display() ==
          "ContainerType:item");
    CHECK_THROWS_AS(parse_component_token(component_kind::type, "Base"),
                    model_error);
  }

  TEST_CASE("the empty set") {
    schema_set s;
    CHECK(s.empty());
    for (auto k : all_component_kinds) CHECK(s.components(k).empty());
    for (auto r : all_relations) CHECK(s.pairs(r).empty());
    CHECK(unite(s, s) == schema_set{});
    CHECK(is_subset_of(s, ex::full_set()));
    CHECK(consistency_check(s).empty());
  }

  TEST_CASE("adding components is idempotent and sorted by kind") {
    schema_set s;
    s.add_component(ex::type("Base"));
    CHECK(s.types() == std::set{ex::type("Base")});
    s.add_component(ex::type("Base"));
    CHECK(s.types().size() == 1);
    s.add_component(ex::inner_element("ContainerType", "item"));
    CHECK(s.elements() == std::set{ex::inner_element("ContainerType", "item")});
    CHECK(s.types().size() == 1);
  }

  TEST_CASE("anyType is never stored") {
    schema_set s;
    auto any = component_ref::global(component_kind::type, xs_name("anyType"));
    CHECK_THROWS_AS(s.add_component(any), model_error);
    CHECK_THROWS_AS(
      s.add_relation(relation_kind::is_derived_from, ex::type("Base"), any),
      model_error);
  }

  TEST_CASE("relations add their endpoints") {
    schema_set s;
    s.add_relation(relation_kind::is_derived_from, ex::type("Child"),
                   ex::type("Base"));
    CHECK(s.pairs(relation_kind::is_derived_from).size() == 1);
    CHECK(s.types() == std::set{ex::type("Base"), ex::type("Child")});
    s.add_relation(relation_kind::reference, ex::type("Base"),
                   ex::global_element("baseElem2"));
    CHECK(s.has_pair(relation_kind::reference, ex::type("Base"),
                     ex::global_element("baseElem2")));
    CHECK(s.contains(ex::global_element("baseElem2")));
    CHECK(consistency_check(s).empty());
  }

  TEST_CASE("relation signatures are enforced") {
    schema_set s;
    auto e = ex::global_element("Container");
    auto t = ex::type("Base");
    CHECK_THROWS_AS(s.add_relation(relation_kind::is_derived_from, e, t),
                    model_error);
    CHECK_THROWS_AS(s.add_relation(relation_kind::is_of_type, t, t),
                    model_error);
    CHECK_THROWS_AS(s.add_relation(relation_kind::is_in_substitution_group, e,
                                   ex::inner_element("Base", "baseElem")),
                    model_error);
    // contains needs an inner right operand held by the left operand
    CHECK_THROWS_AS(s.add_relation(relation_kind::contains, t, e), model_error);
    CHECK_THROWS_AS(s.add_relation(relation_kind::contains, ex::type("Child"),
                                   ex::inner_element("Base", "baseElem")),
                    model_error);
    // reference needs a global right operand
    CHECK_THROWS_AS(s.add_relation(relation_kind::reference, t,
                                   ex::inner_element("Base", "baseElem")),
                    model_error);
    CHECK(s.empty());
  }

  TEST_CASE("isDerivedFrom stays acyclic and left-unique") {
    schema_set s;
    s.add_relation(relation_kind::is_derived_from, ex::type("Child"),
                   ex::type("Base"));
    CHECK_THROWS_AS(s.add_relation(relation_kind::is_derived_from,
                                   ex::type("Base"), ex::type("Child")),
                    model_error);
    CHECK_THROWS_AS(s.add_relation(relation_kind::is_derived_from,
                                   ex::type("Child"), ex::type("Other")),
                    model_error);
    CHECK_THROWS_AS(s.add_relation(relation_kind::is_derived_from,
                                   ex::type("Base"), ex::type("Base")),
                    model_error);
    // the same pair again is fine
    s.add_relation(relation_kind::is_derived_from, ex::type("Child"),
                   ex::type("Base"));
    CHECK(s.pairs(relation_kind::is_derived_from).size() == 1);
  }

  TEST_CASE("isOfType is left-unique, also under union") {
    schema_set a, b;
    auto e = ex::global_element("baseElem2");
    a.add_relation(relation_kind::is_of_type, e, ex::string_type());
    CHECK_THROWS_AS(a.add_relation(relation_kind::is_of_type, e, ex::type("Base")),
                    model_error);
    b.add_relation(relation_kind::is_of_type, e, ex::type("Base"));
    CHECK_THROWS_AS(unite(a, b), model_error);
  }

  TEST_CASE("union of the two instance subsets") {
    auto i1 = ex::instance1_subset();
    auto both = ex::both_instances_subset();
    CHECK(unite(i1, schema_set{}) == i1);
    auto u = unite(i1, both);
    CHECK(u == both);
    CHECK(u.contains(ex::type("Child")));
    CHECK(u.has_pair(relation_kind::is_derived_from, ex::type("Child"),
                     ex::type("Base")));
    CHECK_FALSE(u.contains(ex::global_element("baseElem2")));
    CHECK(unite(both, i1) == u);
  }

  TEST_CASE("subset relation on the example listings") {
    CHECK(is_subset_of(ex::instance1_subset(), ex::full_set()));
    CHECK_FALSE(is_subset_of(ex::full_set(), ex::instance1_subset()));
    CHECK(is_subset_of(ex::full_set(), ex::full_set()));
    CHECK(is_subset_of(ex::instance1_subset(), ex::both_instances_subset()));
  }

  TEST_CASE("copying relations needs both endpoints in the component set") {
    auto full = ex::full_set();
    auto r = copy_relations({}, full, {ex::type("Child"), ex::type("Base")});
    CHECK(r.pairs(relation_kind::is_derived_from) ==
          relation{{ex::type("Child"), ex::type("Base")}});
    CHECK(r.pairs(relation_kind::contains).empty());
    CHECK(r.pairs(relation_kind::reference).empty());

    auto none = copy_relations({}, full, {ex::type("Base")});
    CHECK(none.empty());

    schema_set target;
    target.add_component(ex::type("ContainerType"));
    CHECK(copy_relations(target, full, {}) == target);
  }

  TEST_CASE("consistency check reports constructed violations") {
    CHECK(consistency_check(ex::full_set()).empty());

    schema_set missing;
    missing.unchecked_relations().is_of_type.insert(
      {ex::global_element("baseElem2"), ex::string_type()});
    missing.add_component(ex::global_element("baseElem2"));
    auto v = consistency_check(missing);
    REQUIRE(v.size() == 1);
    CHECK(v[0].invariant == "closure");

    schema_set cycle;
    cycle.add_component(ex::type("A"));
    cycle.add_component(ex::type("B"));
    cycle.unchecked_relations().is_derived_from.insert({ex::type("A"), ex::type("B")});
    cycle.unchecked_relations().is_derived_from.insert({ex::type("B"), ex::type("A")});
    auto c = consistency_check(cycle);
    REQUIRE(c.size() == 1);
    CHECK(c[0].invariant == "acyclic");
  }

  TEST_CASE("the example schema set has the expected cardinalities") {
    auto s = ex::full_set();
    CHECK(s.types().size() == 4);
    CHECK(s.elements().size() == 5);
    CHECK(s.attributes().empty());
    CHECK(s.pairs(relation_kind::is_of_type).size() == 5);
    CHECK(s.pairs(relation_kind::reference).size() == 1);
    CHECK(s.pairs(relation_kind::contains).size() == 3);
    CHECK(s.pairs(relation_kind::is_derived_from).size() == 1);
    CHECK(s.pairs(relation_kind::is_in_substitution_group).empty());
  }

  TEST_CASE("canonical dump is sorted and parses back") {
    auto s = ex::full_set();
    auto text = canonical_dump(s);
    CHECK(parse_canonical_dump(text) == s);
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(line);
        line.clear();
      } else {
        line += c;
      }
    }
    CHECK(lines.size() == 9 + 10);
    CHECK(std::is_sorted(lines.begin(), lines.end()));
    CHECK(text.find("isDerivedFrom T {}Child T {}Base\n") != std::string::npos);
    CHECK(text.find("E {}ContainerType:item\n") != std::string::npos);
    CHECK(canonical_dump(parse_canonical_dump(text)) == text);
    CHECK_THROWS_AS(parse_canonical_dump("bogus line\n"), model_error);
    CHECK(parse_canonical_dump("# comment\n\n").empty());
  }

}
