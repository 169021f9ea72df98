#include "example_sets.hpp"

namespace xsdprune::testing::example {

  component_ref
  type(const char* local) {
    return component_ref::global(component_kind::type, qualified_name("", local));
  }

  component_ref
  global_element(const char* local) {
    return component_ref::global(component_kind::element,
                                 qualified_name("", local));
  }

  component_ref
  inner_element(const char* container, const char* local) {
    return component_ref::inner(component_kind::element, type(container), local);
  }

  component_ref
  string_type() {
    return component_ref::global(component_kind::type, xs_name("string"));
  }

  schema_set
  full_set() {
    schema_set s;
    for (const char* t : {"Base", "Child", "ContainerType"})
      s.add_component(type(t));
    s.add_component(string_type());
    s.add_component(global_element("Container"));
    s.add_component(global_element("baseElem2"));
    s.add_component(inner_element("Base", "baseElem"));
    s.add_component(inner_element("Child", "chdElem"));
    s.add_component(inner_element("ContainerType", "item"));

    s.add_relation(relation_kind::is_of_type, global_element("Container"),
                   type("ContainerType"));
    s.add_relation(relation_kind::is_of_type, global_element("baseElem2"),
                   string_type());
    s.add_relation(relation_kind::is_of_type, inner_element("Base", "baseElem"),
                   string_type());
    s.add_relation(relation_kind::is_of_type, inner_element("Child", "chdElem"),
                   string_type());
    s.add_relation(relation_kind::is_of_type,
                   inner_element("ContainerType", "item"), type("Base"));
    s.add_relation(relation_kind::reference, type("Base"),
                   global_element("baseElem2"));
    s.add_relation(relation_kind::contains, type("Base"),
                   inner_element("Base", "baseElem"));
    s.add_relation(relation_kind::contains, type("Child"),
                   inner_element("Child", "chdElem"));
    s.add_relation(relation_kind::contains, type("ContainerType"),
                   inner_element("ContainerType", "item"));
    s.add_relation(relation_kind::is_derived_from, type("Child"), type("Base"));
    return s;
  }

  schema_set
  instance1_subset() {
    schema_set s;
    s.add_component(type("Base"));
    s.add_component(string_type());
    s.add_component(type("ContainerType"));
    s.add_component(global_element("Container"));
    s.add_component(inner_element("Base", "baseElem"));
    s.add_component(inner_element("ContainerType", "item"));
    s.add_relation(relation_kind::is_of_type, global_element("Container"),
                   type("ContainerType"));
    s.add_relation(relation_kind::is_of_type, inner_element("Base", "baseElem"),
                   string_type());
    s.add_relation(relation_kind::is_of_type,
                   inner_element("ContainerType", "item"), type("Base"));
    s.add_relation(relation_kind::contains, type("Base"),
                   inner_element("Base", "baseElem"));
    s.add_relation(relation_kind::contains, type("ContainerType"),
                   inner_element("ContainerType", "item"));
    return s;
  }

  schema_set
  both_instances_subset() {
    schema_set s = instance1_subset();
    s.add_relation(relation_kind::is_derived_from, type("Child"), type("Base"));
    s.add_relation(relation_kind::is_of_type, inner_element("Child", "chdElem"),
                   string_type());
    s.add_relation(relation_kind::contains, type("Child"),
                   inner_element("Child", "chdElem"));
    return s;
  }

  schema_set
  base_elem2_subset() {
    schema_set s;
    s.add_relation(relation_kind::is_of_type, global_element("baseElem2"),
                   string_type());
    return s;
  }

} // namespace xsdprune::testing::example
