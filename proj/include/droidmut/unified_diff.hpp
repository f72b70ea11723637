#ifndef DROIDMUT_UNIFIED_DIFF_HPP
#define DROIDMUT_UNIFIED_DIFF_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace droidmut {

namespace diff_detail {

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

enum class EditOp { Keep, Delete, Insert };

// Myers O(ND) shortest edit script over lines.
inline std::vector<EditOp> line_diff(const std::vector<std::string_view>& a,
                                     const std::vector<std::string_view>& b) {
    const long n = static_cast<long>(a.size());
    const long m = static_cast<long>(b.size());
    const long max_d = n + m;
    std::vector<std::vector<long>> trace;
    std::vector<long> v(static_cast<std::size_t>(2 * max_d + 1), 0);
    auto at = [&](std::vector<long>& vec, long k) -> long& {
        return vec[static_cast<std::size_t>(k + max_d)];
    };

    long found_d = -1;
    for (long d = 0; d <= max_d; ++d) {
        trace.push_back(v);
        for (long k = -d; k <= d; k += 2) {
            long x;
            if (k == -d || (k != d && at(v, k - 1) < at(v, k + 1)))
                x = at(v, k + 1);
            else
                x = at(v, k - 1) + 1;
            long y = x - k;
            while (x < n && y < m && a[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)]) {
                ++x;
                ++y;
            }
            at(v, k) = x;
            if (x >= n && y >= m) {
                found_d = d;
                break;
            }
        }
        if (found_d >= 0) break;
    }

    // backtrack
    std::vector<EditOp> ops;
    long x = n, y = m;
    for (long d = found_d; d > 0; --d) {
        auto& pv = trace[static_cast<std::size_t>(d)];
        long k = x - y;
        long prev_k;
        if (k == -d || (k != d && at(pv, k - 1) < at(pv, k + 1)))
            prev_k = k + 1;
        else
            prev_k = k - 1;
        long prev_x = at(pv, prev_k);
        long prev_y = prev_x - prev_k;
        while (x > prev_x && y > prev_y) {
            ops.push_back(EditOp::Keep);
            --x;
            --y;
        }
        if (x == prev_x) {
            ops.push_back(EditOp::Insert);
            --y;
        } else {
            ops.push_back(EditOp::Delete);
            --x;
        }
    }
    while (x > 0 && y > 0) {
        ops.push_back(EditOp::Keep);
        --x;
        --y;
    }
    while (x > 0) {
        ops.push_back(EditOp::Delete);
        --x;
    }
    while (y > 0) {
        ops.push_back(EditOp::Insert);
        --y;
    }
    std::reverse(ops.begin(), ops.end());
    return ops;
}

struct DiffLine {
    char tag; // ' ', '-', '+'
    std::string_view text;
    bool old_side;
    bool new_side;
};

} // namespace diff_detail

// Unified diff for one file, in `patch -p1` format with a/ and b/ prefixes.
// Returns an empty string when the contents are identical.
inline std::string unified_file_diff(std::string_view path, std::string_view old_content,
                                     std::string_view new_content,
                                     std::size_t context = 3) {
    using namespace diff_detail;
    if (old_content == new_content) return "";

    auto a = split_lines(old_content);
    auto b = split_lines(new_content);
    bool a_no_nl = !old_content.empty() && old_content.back() != '\n';
    bool b_no_nl = !new_content.empty() && new_content.back() != '\n';
    auto ops = line_diff(a, b);

    std::vector<DiffLine> lines;
    std::size_t ai = 0, bi = 0;
    for (EditOp op : ops) {
        switch (op) {
            case EditOp::Keep:
                lines.push_back(DiffLine{' ', a[ai], true, true});
                ++ai;
                ++bi;
                break;
            case EditOp::Delete:
                lines.push_back(DiffLine{'-', a[ai], true, false});
                ++ai;
                break;
            case EditOp::Insert:
                lines.push_back(DiffLine{'+', b[bi], false, true});
                ++bi;
                break;
        }
    }

    // group changed lines into hunks with `context` lines around them
    struct Hunk {
        std::size_t first, last; // inclusive indices into `lines`
    };
    std::vector<Hunk> hunks;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].tag == ' ') continue;
        std::size_t lo = i >= context ? i - context : 0;
        std::size_t hi = std::min(lines.size() - 1, i + context);
        if (!hunks.empty() && lo <= hunks.back().last + 1)
            hunks.back().last = hi;
        else
            hunks.push_back(Hunk{lo, hi});
    }

    std::string out;
    out += "--- a/";
    out += path;
    out += "\n+++ b/";
    out += path;
    out += "\n";

    // line numbers (1-based) of the first line of each hunk on each side
    std::vector<std::size_t> old_line_at(lines.size()), new_line_at(lines.size());
    std::size_t ol = 1, nl = 1;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        old_line_at[i] = ol;
        new_line_at[i] = nl;
        if (lines[i].old_side) ++ol;
        if (lines[i].new_side) ++nl;
    }

    for (const auto& h : hunks) {
        std::size_t old_count = 0, new_count = 0;
        for (std::size_t i = h.first; i <= h.last; ++i) {
            if (lines[i].old_side) ++old_count;
            if (lines[i].new_side) ++new_count;
        }
        std::size_t old_start = old_count ? old_line_at[h.first] : old_line_at[h.first] - 1;
        std::size_t new_start = new_count ? new_line_at[h.first] : new_line_at[h.first] - 1;
        out += "@@ -" + std::to_string(old_start) + "," + std::to_string(old_count) + " +" +
               std::to_string(new_start) + "," + std::to_string(new_count) + " @@\n";
        for (std::size_t i = h.first; i <= h.last; ++i) {
            out += lines[i].tag;
            out += lines[i].text;
            out += "\n";
            bool last_old = lines[i].old_side && old_line_at[i] == a.size() && a_no_nl;
            bool last_new = lines[i].new_side && new_line_at[i] == b.size() && b_no_nl;
            if ((lines[i].tag == '-' && last_old) || (lines[i].tag == '+' && last_new) ||
                (lines[i].tag == ' ' && (last_old || last_new)))
                out += "\\ No newline at end of file\n";
        }
    }
    return out;
}

} // namespace droidmut

#endif // DROIDMUT_UNIFIED_DIFF_HPP
