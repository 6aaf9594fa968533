#include "survnet/database_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <ostream>

namespace survnet {

namespace {

void put_u16(std::string& s, uint16_t v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& s, uint32_t v) {
    for (int b = 0; b < 4; ++b)
        s.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

void put_u64(std::string& s, uint64_t v) {
    for (int b = 0; b < 8; ++b)
        s.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

struct Cursor {
    const std::string& bytes;
    const std::string& origin;
    size_t at = 0;

    void need(size_t n) const {
        if (at + n > bytes.size())
            throw DataError(origin + ": truncated scenario database");
    }
    uint8_t u8() {
        need(1);
        return static_cast<uint8_t>(bytes[at++]);
    }
    uint16_t u16() {
        need(2);
        uint16_t v = static_cast<uint16_t>(static_cast<uint8_t>(bytes[at]) |
                                           static_cast<uint8_t>(bytes[at + 1]) << 8);
        at += 2;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= static_cast<uint32_t>(static_cast<uint8_t>(bytes[at + b])) << (8 * b);
        at += 4;
        return v;
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<uint64_t>(static_cast<uint8_t>(bytes[at + b])) << (8 * b);
        at += 8;
        return v;
    }
    double f64() {
        uint64_t v = u64();
        double d;
        std::memcpy(&d, &v, 8);
        return d;
    }
};

} // namespace

std::string serialize_database(const ScenarioDatabase& db) {
    std::string s = "SVDB";
    s.push_back(1);
    put_u16(s, db.m);
    put_u16(s, db.class_count);
    for (const DatabaseElement& e : db.elements) {
        s.push_back(static_cast<char>(e.kind == LinkKind::VB ? 0
                                      : e.kind == LinkKind::VT ? 1
                                                               : 2));
        uint64_t w;
        std::memcpy(&w, &e.weight, 8);
        put_u64(s, w);
        put_u32(s, e.class_index);
        put_u32(s, e.origin_digest);
    }
    for (uint64_t r : db.records)
        put_u64(s, r);
    return s;
}

ScenarioDatabase parse_database(const std::string& bytes, const std::string& origin) {
    Cursor c{bytes, origin};
    c.need(5);
    if (bytes.compare(0, 4, "SVDB") != 0)
        throw DataError(origin + ": not a scenario database (bad magic)");
    c.at = 4;
    if (uint8_t v = c.u8(); v != 1)
        throw DataError(origin + ": unsupported database version " + std::to_string(v));
    ScenarioDatabase db;
    db.m = c.u16();
    db.class_count = c.u16();
    if (db.m > ScenarioDatabase::kMaxM)
        throw DataError(origin + ": element count " + std::to_string(db.m) + " out of range");
    if (db.class_count > ScenarioDatabase::kMaxClasses)
        throw DataError(origin + ": class count " + std::to_string(db.class_count) +
                        " out of range");
    for (int i = 0; i < db.m; ++i) {
        DatabaseElement e;
        uint8_t k = c.u8();
        if (k > 2)
            throw DataError(origin + ": bad element kind byte");
        e.kind = k == 0 ? LinkKind::VB : k == 1 ? LinkKind::VT : LinkKind::H;
        e.weight = c.f64();
        e.class_index = c.u32();
        if (e.class_index != 0xFFFFFFFFu && e.class_index >= db.class_count)
            throw DataError(origin + ": element class index out of range");
        e.origin_digest = c.u32();
        db.elements.push_back(e);
    }
    const uint64_t total = uint64_t(1) << db.m;
    db.records.reserve(total);
    for (uint64_t k = 0; k < total; ++k)
        db.records.push_back(c.u64());
    if (c.at != bytes.size())
        throw DataError(origin + ": trailing bytes after scenario database");
    return db;
}

void write_database_file(const ScenarioDatabase& db, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path);
    std::string s = serialize_database(db);
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!out)
        throw DataError("short write to " + path);
}

ScenarioDatabase read_database_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot read " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_database(bytes, path);
}

void export_database_csv(const ScenarioDatabase& db, std::ostream& out) {
    std::map<uint32_t, double> class_capacity;
    for (const DatabaseElement& e : db.elements)
        if (e.kind == LinkKind::VT)
            class_capacity.emplace(e.class_index, e.weight);
    out << "scenario_bitmask,connected_classes,delivered_capacity\n";
    char buf[32];
    for (uint64_t k = 0; k < db.records.size(); ++k) {
        uint64_t rec = db.records[k];
        double delivered = 0.0;
        for (uint32_t c = 0; c < db.class_count; ++c)
            if (rec >> c & 1)
                delivered += class_capacity[c];
        std::snprintf(buf, sizeof(buf), "%.10g", delivered);
        out << k << ',' << rec << ',' << buf << '\n';
    }
}

bool database_matches(const ScenarioDatabase& db, const Representative& rep) {
    const LinkNetwork& net = rep.sub.net;
    if (db.m != net.elements.size())
        return false;
    if (db.class_count != rep.form.class_order.size())
        return false;
    std::map<int, uint32_t> class_of_source;
    for (uint32_t c = 0; c < rep.form.class_order.size(); ++c)
        class_of_source[rep.form.class_order[c]] = c;
    for (size_t i = 0; i < net.elements.size(); ++i) {
        const LinkElement& e = net.elements[i];
        const DatabaseElement& d = db.elements[i];
        if (d.kind != e.kind)
            return false;
        if (d.weight != (e.kind == LinkKind::H ? 0.0 : e.weight))
            return false;
        uint32_t want = e.kind == LinkKind::VT ? class_of_source.at(e.source_id) : 0xFFFFFFFFu;
        if (d.class_index != want)
            return false;
        if (d.origin_digest != origin_digest(e.origins))
            return false;
    }
    return uint64_t(db.records.size()) == uint64_t(1) << db.m;
}

} // namespace survnet
