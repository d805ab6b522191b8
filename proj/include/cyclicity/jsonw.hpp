#ifndef CYCLICITY_JSONW_HPP
#define CYCLICITY_JSONW_HPP

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace cyc {

// Minimal JSON value with insertion-ordered objects and doubles printed at
// 17 significant digits, so identical inputs serialize byte-identically.
class Json {
public:
    enum class Type { Null, Bool, Int, Double, String, Array, Object };

    Json() : type_(Type::Null) {}
    Json(bool b) : type_(Type::Bool), b_(b) {}
    Json(int v) : type_(Type::Int), i_(v) {}
    Json(long v) : type_(Type::Int), i_(v) {}
    Json(double v) : type_(Type::Double), d_(v) {}
    Json(const char* s) : type_(Type::String), s_(s) {}
    Json(std::string s) : type_(Type::String), s_(std::move(s)) {}

    static Json array() {
        Json j;
        j.type_ = Type::Array;
        return j;
    }
    static Json object() {
        Json j;
        j.type_ = Type::Object;
        return j;
    }

    Json& push(Json v) {
        arr_.push_back(std::move(v));
        return *this;
    }
    Json& set(std::string key, Json v) {
        obj_.emplace_back(std::move(key), std::move(v));
        return *this;
    }

    std::string dump(int indent = 0) const {
        std::string out;
        write(out, indent, 0);
        if (indent > 0) out += "\n";
        return out;
    }

private:
    static void escape(std::string& out, const std::string& s) {
        out += '"';
        for (char c : s) {
            switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c) & 0xff);
                    out += buf;
                } else {
                    out += c;
                }
            }
        }
        out += '"';
    }

    void write(std::string& out, int indent, int depth) const {
        auto pad = [&](int d) {
            if (indent > 0) {
                out += "\n";
                out.append(static_cast<size_t>(indent) * d, ' ');
            }
        };
        switch (type_) {
        case Type::Null: out += "null"; return;
        case Type::Bool: out += b_ ? "true" : "false"; return;
        case Type::Int: out += std::to_string(i_); return;
        case Type::Double: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", d_);
            out += buf;
            return;
        }
        case Type::String: escape(out, s_); return;
        case Type::Array: {
            out += "[";
            for (size_t i = 0; i < arr_.size(); ++i) {
                if (i) out += ",";
                pad(depth + 1);
                arr_[i].write(out, indent, depth + 1);
            }
            if (!arr_.empty()) pad(depth);
            out += "]";
            return;
        }
        case Type::Object: {
            out += "{";
            for (size_t i = 0; i < obj_.size(); ++i) {
                if (i) out += ",";
                pad(depth + 1);
                escape(out, obj_[i].first);
                out += indent > 0 ? ": " : ":";
                obj_[i].second.write(out, indent, depth + 1);
            }
            if (!obj_.empty()) pad(depth);
            out += "}";
            return;
        }
        }
    }

    Type type_;
    bool b_ = false;
    long i_ = 0;
    double d_ = 0;
    std::string s_;
    std::vector<Json> arr_;
    std::vector<std::pair<std::string, Json>> obj_;
};

} // namespace cyc

#endif
