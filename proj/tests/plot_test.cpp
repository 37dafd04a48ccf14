#include <algorithm>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include "webometer/plot/svg.hpp"

using namespace webometer::plot;
namespace pt = boost::property_tree;

namespace {

// Parses the document (throws on malformed XML) and counts child elements
// of <svg> by tag and class.
struct SvgCounts {
    int paths = 0;
    int polylines = 0;
    int series_paths = 0;
};

SvgCounts parse_svg(const std::string& text) {
    std::istringstream in(text);
    pt::ptree tree;
    pt::read_xml(in, tree);
    SvgCounts c;
    const auto& svg = tree.get_child("svg");
    EXPECT_EQ(svg.get<std::string>("<xmlattr>.xmlns"), "http://www.w3.org/2000/svg");
    for (const auto& [tag, node] : svg) {
        if (tag == "path") {
            ++c.paths;
            c.series_paths += node.get<std::string>("<xmlattr>.class", "") == "series";
        } else if (tag == "polyline") {
            ++c.polylines;
        }
    }
    return c;
}

}  // namespace

TEST(Svg, LineChartHasOnePathPerSeries) {
    std::vector<LineSeries> s = {{"standard", {{0, 100}, {1, 120}, {2, 90}, {5, 130}}},
                                 {"api <&>", {{3, 70}, {4, 80}, {5, 60}}}};
    auto svg = line_chart(s, {"Hits \"q\"", "day", "hits"}, std::make_pair("2004-07-01", "2004-07-06"));
    auto c = parse_svg(svg);
    EXPECT_EQ(c.series_paths, 2);
    EXPECT_EQ(c.polylines, 0);
    EXPECT_NE(svg.find("api &lt;&amp;&gt;"), std::string::npos);
}

TEST(Svg, GapStartsANewSubpath) {
    std::vector<LineSeries> s = {{"x", {{0, 1}, {1, 2}, {4, 3}, {5, 4}}}};
    auto svg = line_chart(s, {"t", "x", "y"});
    auto pos = svg.find("class=\"series\"");
    ASSERT_NE(pos, std::string::npos);
    auto d_start = svg.find(" d=\"", pos) + 4;
    auto d = svg.substr(d_start, svg.find('"', d_start) - d_start);
    EXPECT_EQ(std::count(d.begin(), d.end(), 'M'), 2);
    EXPECT_EQ(std::count(d.begin(), d.end(), 'L'), 2);
}

TEST(Svg, LogLogScatterWithFit) {
    LineSeries pts{"TLD counts", {{1, 97}, {2, 50}, {3, 30}, {4, 26}, {5, 17}}};
    auto c = parse_svg(loglog_scatter(pts, PowerLawLine{97, 1.0}, {"TLDs", "rank", "count"}));
    EXPECT_EQ(c.series_paths, 1);
    EXPECT_EQ(c.polylines, 1);
    auto bare = parse_svg(loglog_scatter(pts, std::nullopt, {"TLDs", "rank", "count"}));
    EXPECT_EQ(bare.polylines, 0);
}

TEST(Svg, EmptyInputsStayWellFormed) {
    EXPECT_NO_THROW(parse_svg(line_chart({}, {"", "", ""})));
    EXPECT_NO_THROW(parse_svg(loglog_scatter({"none", {}}, std::nullopt, {"", "", ""})));
    EXPECT_NO_THROW(parse_svg(bar_chart({}, {"", "", ""})));
    std::vector<LineSeries> flat = {{"flat", {{0, 5}, {1, 5}}}};
    EXPECT_NO_THROW(parse_svg(line_chart(flat, {"", "", ""})));
}

TEST(Svg, BarChartIsOneSeries) {
    auto c = parse_svg(bar_chart({{"html", 0.7}, {"pdf", 0.15}, {"doc", 0.06}}, {"Formats", "ext", "share"}));
    EXPECT_EQ(c.series_paths, 1);
}
