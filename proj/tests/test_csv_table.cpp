#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include <fairaudit/table.hpp>

using namespace fairaudit;

namespace {

std::string write_tmp(const std::string& name, const std::string& content) {
    const std::string path = "test_tmp_" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("csv parses header, trims cells, honors quotes") {
    const auto path = write_tmp("basic.csv",
                                "a, b ,c\n"
                                "1, x y , \"q,\"\"z\"\n"
                                "2, w, v\n");
    const CsvFile f = read_csv(path);
    REQUIRE(f.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(f.rows.size() == 2);
    CHECK(f.rows[0] == std::vector<std::string>{"1", "x y", "q,\"z"});
    std::remove(path.c_str());
}

TEST_CASE("csv wrong-arity row reports the line number") {
    const auto path = write_tmp("arity.csv", "a,b\n1,2\n1,2,3\n");
    try {
        read_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line_number == 3);
    }
    std::remove(path.c_str());
}

TEST_CASE("headerless space-delimited file loads via ordered schema") {
    const auto path = write_tmp("ger.data", "A11 6 A34 good\nA12 48 A32 bad\n");
    TableSchema schema;
    schema.ordered_names = {"status", "duration", "history", "outcome"};
    schema.kinds = {{"status", ColumnKind::Categorical},
                    {"duration", ColumnKind::Continuous},
                    {"history", ColumnKind::Categorical},
                    {"outcome", ColumnKind::Categorical}};
    CsvOptions opt;
    opt.delimiter = ' ';
    opt.has_header = false;
    const RawTable t = load_csv(path, schema, opt);
    REQUIRE(t.n_rows() == 2);
    CHECK(*t.at(1, 0) == "A12");
    CHECK(*t.at(0, 3) == "good");
    std::remove(path.c_str());
}

TEST_CASE("missing markers become explicit missing cells") {
    const auto path = write_tmp("miss.csv", "a,b\n?,1\nx,\n");
    TableSchema schema;
    schema.kinds = {{"a", ColumnKind::Categorical}, {"b", ColumnKind::Categorical}};
    const RawTable t = load_csv(path, schema);
    CHECK(!t.at(0, 0).has_value());
    CHECK(t.at(0, 1).has_value());
    CHECK(!t.at(1, 1).has_value());
    std::remove(path.c_str());
}

TEST_CASE("schema naming an absent column is a config error") {
    const auto path = write_tmp("cfgerr.csv", "a\nx\n");
    TableSchema schema;
    schema.kinds = {{"a", ColumnKind::Categorical}, {"ghost", ColumnKind::Continuous}};
    CHECK_THROWS_AS(load_csv(path, schema), ConfigError);
    std::remove(path.c_str());
}

TEST_CASE("undeclared file column errors unless drop_undeclared") {
    const auto path = write_tmp("undecl.csv", "a,b\n1,2\n");
    TableSchema schema;
    schema.kinds = {{"a", ColumnKind::Categorical}};
    CHECK_THROWS_AS(load_csv(path, schema), ConfigError);
    schema.drop_undeclared = true;
    const RawTable t = load_csv(path, schema);
    CHECK(t.n_cols() == 1);
    std::remove(path.c_str());
}

TEST_CASE("empty file with header only loads with zero rows") {
    const auto path = write_tmp("empty.csv", "a,b\n");
    TableSchema schema;
    schema.kinds = {{"a", ColumnKind::Categorical}, {"b", ColumnKind::Continuous}};
    const RawTable t = load_csv(path, schema);
    CHECK(t.n_rows() == 0);
    CHECK(t.n_cols() == 2);
    std::remove(path.c_str());
}

TEST_CASE("missing file raises IoError") {
    TableSchema schema;
    CHECK_THROWS_AS(load_csv("does_not_exist_anywhere.csv", schema), IoError);
}
