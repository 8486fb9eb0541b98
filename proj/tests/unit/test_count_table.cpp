#include <gtest/gtest.h>

#include <sstream>

#include "percolattice/count_table.hpp"

namespace {

using namespace percolattice;

CountTable small() {
    CountTable t;
    t.object_class = ObjectClass::interface;
    t.mode = Mode::bond;
    t.lattice = "z2";
    t.n_max = 2;
    t.complete = true;
    t.add(0, 4, 1);
    t.add(1, 6, 4);
    t.add(2, 7, 8);
    t.add(2, 8, 10);
    return t;
}

TEST(CountTable, AddMergeAndRows) {
    auto t = small();
    EXPECT_EQ(t.at(2, 8), 10u);
    EXPECT_EQ(t.at(2, 9), 0u);
    EXPECT_EQ(t.row_total(2), 18u);
    t.merge(small());
    EXPECT_EQ(t.row_total(2), 36u);
    EXPECT_EQ(t.row(1), (std::map<int, std::uint64_t>{{6, 8}}));
}

TEST(CountTable, TransposeSwapsIndices) {
    const auto t = small().transposed();
    EXPECT_EQ(t.at(8, 2), 10u);
    EXPECT_EQ(t.transposed().entries, small().entries);
}

TEST(CountTable, RequireRow) {
    auto t = small();
    EXPECT_NO_THROW(t.require_row(2));
    EXPECT_THROW(t.require_row(3), IncompleteRow);
    t.complete = false;
    EXPECT_THROW(t.require_row(1), IncompleteRow);
}

TEST(CountTable, CsvAndSidecarRoundTrip) {
    const auto t = small();
    std::stringstream ss;
    write_csv(ss, t);
    EXPECT_EQ(ss.str().substr(0, kCountCsvHeader.size()), kCountCsvHeader);
    auto back = read_csv(ss);
    apply_sidecar(back, sidecar(t, "test"));
    EXPECT_EQ(back, t);
}

TEST(CountTable, MalformedCsvIsRejected) {
    std::stringstream ss("class,mode,lattice,n,m,count\ninterface,bond,z2,1,six,4\n");
    EXPECT_ANY_THROW(read_csv(ss));
    std::stringstream mixed("class,mode,lattice,n,m,count\ninterface,bond,z2,1,6,4\nanimal,bond,z2,1,6,4\n");
    EXPECT_ANY_THROW(read_csv(mixed));
}

TEST(CountTable, ObjectClassNames) {
    EXPECT_EQ(parse_object_class("animals"), ObjectClass::animal);
    EXPECT_EQ(parse_object_class("multi-interface"), ObjectClass::multi_interface);
    EXPECT_EQ(parse_object_class(to_string(ObjectClass::inner_interface)), ObjectClass::inner_interface);
    EXPECT_THROW(parse_object_class("polyomino"), std::invalid_argument);
}

}  // namespace
