#include "geo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"
#include "io_util.hpp"

namespace meshfree {

namespace {

constexpr double kPlausibleMinF = -80.0;
constexpr double kPlausibleMaxF = 150.0;

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": bad number `" + s + "`");
    }
}

} // namespace

std::vector<StationRecord> load_stations(const std::string& stations_csv,
                                         const std::string& readings_csv,
                                         std::vector<std::string>* warnings) {
    std::ifstream sf(stations_csv);
    if (!sf) throw IoError("cannot open stations file: " + stations_csv);
    std::vector<StationRecord> stations;
    std::map<std::string, std::size_t> by_id;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    while (std::getline(sf, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        const std::string where = stations_csv + ":" + std::to_string(lineno);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "station_id")
                throw ParseError(where + ": expected header `station_id,lon,lat`");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) throw ParseError(where + ": expected 3 fields");
        if (fields[0].empty()) throw ParseError(where + ": empty station_id");
        if (by_id.count(fields[0]))
            throw ParseError(where + ": duplicate station_id `" + fields[0] + "`");
        const Point2D loc{parse_number(fields[1], where), parse_number(fields[2], where)};
        for (const StationRecord& s : stations)
            if (euclidean_distance(s.location, loc) <= 1e-9)
                throw ParseError(where + ": station `" + fields[0] +
                                 "` duplicates the location of `" + s.station_id + "`");
        by_id[fields[0]] = stations.size();
        stations.push_back({fields[0], loc, {}});
    }
    if (!header_seen) throw ParseError(stations_csv + ": missing header row");

    std::ifstream rf(readings_csv);
    if (!rf) throw IoError("cannot open readings file: " + readings_csv);
    std::vector<std::map<long, double>> readings(stations.size());
    lineno = 0;
    header_seen = false;
    while (std::getline(rf, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        const std::string where = readings_csv + ":" + std::to_string(lineno);
        if (!header_seen) {
            if (fields.size() != 3 || fields[0] != "station_id")
                throw ParseError(where + ": expected header `station_id,hour_index,temperature_f`");
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) throw ParseError(where + ": expected 3 fields");
        const auto it = by_id.find(fields[0]);
        if (it == by_id.end())
            throw ParseError(where + ": unknown station_id `" + fields[0] + "`");
        const long hour = static_cast<long>(parse_number(fields[1], where));
        if (hour < 1) throw ParseError(where + ": hour_index must be >= 1");
        const double temp = parse_number(fields[2], where);
        if (!std::isfinite(temp)) throw ParseError(where + ": non-finite temperature");
        if (!readings[it->second].emplace(hour, temp).second)
            throw ParseError(where + ": duplicate reading for station `" + fields[0] +
                             "` hour " + std::to_string(hour));
        if (warnings && (temp < kPlausibleMinF || temp > kPlausibleMaxF))
            warnings->push_back(where + ": temperature " + format_double(temp) +
                                " F outside plausible range [-80, 150]");
    }
    if (!header_seen) throw ParseError(readings_csv + ": missing header row");

    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (readings[i].empty())
            throw ParseError("station `" + stations[i].station_id + "` has no readings");
        long expected = 1;
        for (const auto& [hour, temp] : readings[i]) {
            if (hour != expected)
                throw ParseError("station `" + stations[i].station_id +
                                 "` readings are not contiguous from hour 1 (missing hour " +
                                 std::to_string(expected) + ")");
            stations[i].series.push_back(temp);
            ++expected;
        }
    }
    return stations;
}

std::vector<StationRecord> synthesize_stations(const PolygonBoundary& poly, double lon_step,
                                               double lat_step, int hours, std::uint64_t seed) {
    if (!(lon_step > 0.0) || !(lat_step > 0.0))
        throw std::invalid_argument("grid steps must be positive");
    if (hours < 1) throw std::invalid_argument("hours must be >= 1");
    double minx, miny, maxx, maxy;
    poly.bounding_box(minx, miny, maxx, maxy);
    std::mt19937_64 rng(seed);
    std::vector<StationRecord> stations;
    int id = 0;
    for (double lat = miny; lat <= maxy + 1e-9; lat += lat_step) {
        for (double lon = minx; lon <= maxx + 1e-9; lon += lon_step) {
            char name[16];
            std::snprintf(name, sizeof(name), "st_%04d", ++id);
            StationRecord rec{name, {lon, lat}, {}};
            rec.series.reserve(hours);
            for (int h = 1; h <= hours; ++h) {
                const double diurnal = kSynthDiurnalAmplitudeF *
                                       std::sin(2.0 * std::numbers::pi * (h - 1) / 24.0);
                const double noise = (uniform_unit(rng) * 2.0 - 1.0) * kSynthNoiseBoundF;
                rec.series.push_back(kSynthBaseTempF + kSynthLonGradientFPerDeg * (lon - minx) +
                                     kSynthLatGradientFPerDeg * (lat - miny) + diurnal + noise);
            }
            stations.push_back(std::move(rec));
        }
    }
    return stations;
}

ScalarField interpolate_hour(const std::vector<StationRecord>& stations, int hour_index,
                             const InterpolationMethod& method, std::vector<Point2D> targets,
                             int threads) {
    if (stations.empty()) throw std::invalid_argument("no stations");
    if (hour_index < 1) throw std::invalid_argument("hour_index is 1-based; got " +
                                                    std::to_string(hour_index));
    const StationRecord* shortest = &stations[0];
    for (const StationRecord& s : stations)
        if (s.series.size() < shortest->series.size()) shortest = &s;
    if (static_cast<std::size_t>(hour_index) > shortest->series.size())
        throw std::invalid_argument("hour " + std::to_string(hour_index) +
                                    " out of range: station `" + shortest->station_id +
                                    "` has only " + std::to_string(shortest->series.size()) +
                                    " readings");
    std::vector<Point2D> pts;
    std::vector<double> vals;
    for (const StationRecord& s : stations) {
        pts.push_back(s.location);
        vals.push_back(s.series[hour_index - 1]);
    }
    const ScatterSet data = ScatterSet::create(std::move(pts), std::move(vals), "F");

    ScalarField field;
    if (const auto* rbf_method = std::get_if<RbfMethod>(&method)) {
        const RbfModel model = fit(data, rbf_method->kernel, rbf_method->epsilon);
        field.values = predict_many(model, targets, threads);
    } else {
        field.values = idw_interpolate_many(data, targets, std::get<IdwConfig>(method), threads);
    }
    field.points = std::move(targets);
    return field;
}

void export_field_csv(const ScalarField& field, const std::string& path) {
    std::string out = "lon,lat,value\n";
    for (std::size_t i = 0; i < field.points.size(); ++i) {
        out += format_double(field.points[i].x);
        out += ',';
        out += format_double(field.points[i].y);
        out += ',';
        out += format_double(field.values[i]);
        out += '\n';
    }
    atomic_write_file(path, out);
}

namespace {

void field_range(const ScalarField& field, double& vmin, double& vmax) {
    vmin = field.values[0];
    vmax = field.values[0];
    for (double v : field.values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
}

} // namespace

std::vector<std::vector<Segment>> extract_contours(const ScalarField& field,
                                                   const std::vector<double>& levels) {
    if (!field.mesh) throw std::invalid_argument("scalar field has no mesh for contouring");
    if (field.values.empty()) throw std::invalid_argument("empty scalar field");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i] > levels[i - 1]))
            throw std::invalid_argument("contour levels must be strictly increasing");
    for (double l : levels)
        if (!std::isfinite(l)) throw std::invalid_argument("contour level is not finite");

    std::vector<std::vector<Segment>> out(levels.size());
    double vmin, vmax;
    field_range(field, vmin, vmax);
    const double range = vmax - vmin;
    if (range == 0.0) return out;
    const double nudge = 1e-9 * range;

    for (const auto& tri : field.mesh->triangles) {
        for (std::size_t li = 0; li < levels.size(); ++li) {
            const double level = levels[li];
            double v[3];
            Point2D p[3];
            for (int k = 0; k < 3; ++k) {
                p[k] = field.mesh->points[tri[k]];
                v[k] = field.values[tri[k]];
                if (v[k] == level) v[k] += nudge;
            }
            Point2D cross[3];
            int ncross = 0;
            for (int k = 0; k < 3; ++k) {
                const int k2 = (k + 1) % 3;
                if ((v[k] - level) * (v[k2] - level) < 0.0) {
                    const double t = (level - v[k]) / (v[k2] - v[k]);
                    cross[ncross++] = {p[k].x + t * (p[k2].x - p[k].x),
                                       p[k].y + t * (p[k2].y - p[k].y)};
                }
            }
            if (ncross == 2) out[li].push_back({cross[0], cross[1]});
        }
    }
    return out;
}

std::vector<double> default_contour_levels(const ScalarField& field, int count) {
    if (field.values.empty() || count < 1) return {};
    double vmin, vmax;
    field_range(field, vmin, vmax);
    if (vmax <= vmin) return {};
    std::vector<double> levels;
    for (int i = 1; i <= count; ++i)
        levels.push_back(vmin + (vmax - vmin) * i / (count + 1));
    return levels;
}

namespace {

struct Rgb {
    int r, g, b;
};

// Linear ramp through blue, cyan, yellow, red.
Rgb ramp_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    constexpr Rgb stops[4] = {{0, 0, 255}, {0, 255, 255}, {255, 255, 0}, {255, 0, 0}};
    const double scaled = t * 3.0;
    const int seg = std::min(2, static_cast<int>(scaled));
    const double f = scaled - seg;
    const Rgb a = stops[seg], b = stops[seg + 1];
    return {static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
            static_cast<int>(std::lround(a.g + f * (b.g - a.g))),
            static_cast<int>(std::lround(a.b + f * (b.b - a.b)))};
}

std::string fmt2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

void render_contour_svg(const ScalarField& field, const std::vector<double>& levels,
                        const PolygonBoundary& poly, const std::string& path) {
    const auto contours = extract_contours(field, levels); // validates mesh + levels

    double minx, miny, maxx, maxy;
    poly.bounding_box(minx, miny, maxx, maxy);
    for (const Point2D& p : field.points) {
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    const double dx = maxx - minx > 0.0 ? maxx - minx : 1.0;
    const double dy = maxy - miny > 0.0 ? maxy - miny : 1.0;
    const int width = 1000;
    const int height = static_cast<int>(std::lround(width * dy / dx));
    const int legend_height = 60;

    const auto tx = [&](double x) { return (x - minx) / dx * width; };
    const auto ty = [&](double y) { return height - (y - miny) / dy * height; };

    double vmin, vmax;
    field_range(field, vmin, vmax);
    const double range = vmax - vmin;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
        << "\" height=\"" << height + legend_height << "\">\n";

    for (const auto& tri : field.mesh->triangles) {
        double mean = 0.0;
        for (int k = 0; k < 3; ++k) mean += field.values[tri[k]];
        mean /= 3.0;
        const Rgb c = ramp_color(range > 0.0 ? (mean - vmin) / range : 0.5);
        svg << "<polygon points=\"";
        for (int k = 0; k < 3; ++k) {
            const Point2D& p = field.mesh->points[tri[k]];
            svg << fmt2(tx(p.x)) << ',' << fmt2(ty(p.y));
            if (k < 2) svg << ' ';
        }
        svg << "\" fill=\"rgb(" << c.r << ',' << c.g << ',' << c.b << ")\" stroke=\"none\"/>\n";
    }

    for (const auto& level_segments : contours)
        for (const Segment& s : level_segments)
            svg << "<line x1=\"" << fmt2(tx(s.a.x)) << "\" y1=\"" << fmt2(ty(s.a.y))
                << "\" x2=\"" << fmt2(tx(s.b.x)) << "\" y2=\"" << fmt2(ty(s.b.y))
                << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    svg << "<polygon points=\"";
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        svg << fmt2(tx(poly.vertices[i].x)) << ',' << fmt2(ty(poly.vertices[i].y));
        if (i + 1 < poly.vertices.size()) svg << ' ';
    }
    svg << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"2\"/>\n";

    // Legend: 100-cell gradient bar with the field extrema as labels.
    const int bar_x = 100, bar_w = 800, bar_y = height + 15, bar_h = 18;
    for (int i = 0; i < 100; ++i) {
        const Rgb c = ramp_color((i + 0.5) / 100.0);
        svg << "<rect x=\"" << bar_x + i * bar_w / 100 << "\" y=\"" << bar_y << "\" width=\""
            << bar_w / 100 << "\" height=\"" << bar_h << "\" fill=\"rgb(" << c.r << ',' << c.g
            << ',' << c.b << ")\"/>\n";
    }
    svg << "<text x=\"" << bar_x - 10 << "\" y=\"" << bar_y + bar_h - 4
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"end\">" << fmt2(vmin)
        << "</text>\n";
    svg << "<text x=\"" << bar_x + bar_w + 10 << "\" y=\"" << bar_y + bar_h - 4
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << fmt2(vmax) << "</text>\n";
    svg << "</svg>\n";

    atomic_write_file(path, svg.str());
}

} // namespace meshfree
