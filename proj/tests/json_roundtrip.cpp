// Reads a JSON document and checks that parsing and re-dumping reproduces it byte for byte.
#include <fstream>
#include <iostream>
#include <sstream>

#include "superdenom/io.hpp"

int main(int argc, char **argv)
{
    if (argc != 2) {
        std::cerr << "usage: json_roundtrip FILE\n";
        return 2;
    }
    std::ifstream in(argv[1], std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto j = superdenom::Json::parse(text);
    if (superdenom::dump_json(j) != text) {
        std::cerr << argv[1] << ": re-dump differs\n";
        return 1;
    }
    if (j.value("schema", "") != superdenom::schema_id) {
        std::cerr << argv[1] << ": missing schema\n";
        return 1;
    }
    std::string kind = j.value("kind", "");
    if (kind == "verify") {
        superdenom::verification_report_from_json(j);
    } else if (kind == "qn") {
        superdenom::qn_report_from_json(j);
    } else if (kind == "verify_set") {
        for (const auto &r : j.at("reports")) {
            superdenom::verification_report_from_json(r);
        }
    }
    return 0;
}
