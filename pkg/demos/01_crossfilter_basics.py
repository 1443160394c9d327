"""Crossfilter basics: dimensions, filters, groups, and linked selection.

Walks through the core coordinated-view behavior on a tiny sample table:
every filter narrows the shared selection, and each chart's group ignores
its own filter so a brushed chart keeps its full axis visible.
"""

from coordlens import (
    Crossfilter,
    FixedWidth,
    Identity,
    RangeFilter,
    SetFilter,
    TagAnyFilter,
    build_table,
)

# A small sample-collection table with a multi-value tag column.
columns = [
    ("id", "text"),
    ("species", "text"),
    ("weight", "number"),
    ("parts", "tag-list"),
]
rows = [
    {"id": "s1", "species": "deer mouse", "weight": 21.5, "parts": "blood, liver, lung"},
    {"id": "s2", "species": "deer mouse", "weight": 24.0, "parts": "blood"},
    {"id": "s3", "species": "rice rat", "weight": 48.2, "parts": "liver, spleen"},
    {"id": "s4", "species": "rice rat", "weight": 51.9, "parts": "blood, liver"},
    {"id": "s5", "species": "cotton rat", "weight": 96.0, "parts": "whole organism"},
]

table = build_table(columns, rows, key_column="id")
cf = Crossfilter(table)

species = cf.create_dimension("species", "categorical")
weight = cf.create_dimension("weight", "scalar")
parts = cf.create_dimension("parts", "tag")

species_counts = cf.create_group(species, Identity(), "count")
weight_hist = cf.create_group(weight, FixedWidth(origin=0, width=25), "count")
part_counts = cf.create_group(parts, Identity(), "count")

print("everything selected:", cf.selected_count())
print("species bins:", dict(cf.read_group(species_counts).bins))
print("weight bins (width 25):", dict(cf.read_group(weight_hist).bins))
print("tag units (one per tag per record):", dict(cf.read_group(part_counts).bins))

# Brush the weight histogram to [0, 50). The histogram itself keeps its
# full distribution (own-filter exclusion); the other views narrow.
cf.set_filter(weight, RangeFilter(0, 50))
print("\nafter weight in [0, 50):", cf.selected_count())
print("species bins now:", dict(cf.read_group(species_counts).bins))
print("weight bins unchanged:", dict(cf.read_group(weight_hist).bins))

# Add a tag filter: records containing liver OR spleen.
cf.set_filter(parts, TagAnyFilter({"liver", "spleen"}))
print("\nplus parts any-of {liver, spleen}:", cf.selected_count())

# And a species click, like selecting a donut slice.
cf.set_filter(species, SetFilter({"rice rat"}))
print("plus species = rice rat:", cf.selected_count())
print("species bins still show both rats (own filter excluded):",
      dict(cf.read_group(species_counts).bins))

# A table row click narrows to one record; clicking again clears it.
cf.clear_all_filters()
cf.row_click_filter("s3")
print("\nrow click on s3:", cf.selected_count())
cf.row_click_filter("s3")
print("second click clears:", cf.selected_count())

# The searchable, sortable record view backing the data table.
rows_out, total = cf.records_view(sort=("weight", "desc"), search="rat", page=(0, 10))
print(f"\nsearch 'rat' matched {total} rows, heaviest first:")
for r in rows_out:
    print("  ", r["id"], r["species"], r["weight"])
