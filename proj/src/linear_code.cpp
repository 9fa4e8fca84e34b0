#include "gfbt/linear_code.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gfbt {

namespace {

int rank_gf2(std::vector<std::vector<std::uint64_t>> rows, int n) {
    const int wpr = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        const int w = col / 64;
        const std::uint64_t mask = 1ull << (col % 64);
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][w] & mask) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && (rows[r][w] & mask)) {
                for (int j = 0; j < wpr; ++j) rows[r][j] ^= rows[rank][j];
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<std::string> cyclic_rows(const std::string& poly, int n, int k) {
    std::vector<std::string> rows(k, std::string(n, '0'));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < static_cast<int>(poly.size()); ++j)
            rows[i][i + j] = poly[j];
    return rows;
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(int k, int n,
                                 const std::vector<std::string>& rows)
    : k_(k), n_(n), wpr_((n + 63) / 64) {
    if (k < 1 || n < k)
        throw std::invalid_argument("GeneratorMatrix: need 1 <= k <= n");
    if (static_cast<int>(rows.size()) != k)
        throw std::invalid_argument("GeneratorMatrix: row count != k");
    words_.assign(static_cast<std::size_t>(k) * wpr_, 0);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("GeneratorMatrix: row length != n");
        for (int j = 0; j < n; ++j) {
            const char ch = rows[i][j];
            if (ch != '0' && ch != '1')
                throw std::invalid_argument(
                    "GeneratorMatrix: rows must be 0/1 characters");
            if (ch == '1')
                words_[static_cast<std::size_t>(i) * wpr_ + j / 64] |=
                    1ull << (j % 64);
        }
    }
    std::vector<std::vector<std::uint64_t>> copy(k);
    for (int i = 0; i < k; ++i)
        copy[i].assign(row_words(i), row_words(i) + wpr_);
    if (rank_gf2(std::move(copy), n) != k)
        throw std::invalid_argument(
            "GeneratorMatrix: rows are linearly dependent over GF(2)");
}

int WeightEnumerator::d_min() const {
    if (spectrum.empty())
        throw std::logic_error("WeightEnumerator: empty spectrum has no d_min");
    return spectrum.begin()->first;
}

std::uint64_t WeightEnumerator::total_codewords() const {
    std::uint64_t total = 0;
    for (const auto& [d, a] : spectrum) total += a;
    return total;
}

WeightEnumerator weight_enumerator(const GeneratorMatrix& g) {
    if (g.k() > 26)
        throw std::invalid_argument(
            "weight_enumerator: k > 26 exceeds the enumeration budget");

    const int wpr = g.words_per_row();
    std::vector<std::uint64_t> current(wpr, 0);
    std::vector<std::uint64_t> counts(g.n() + 1, 0);

    // Gray-code walk: step i flips message bit ctz(i), so each codeword is
    // one row-XOR away from the previous one.
    const std::uint64_t total = 1ull << g.k();
    for (std::uint64_t i = 1; i < total; ++i) {
        const int flip = std::countr_zero(i);
        const std::uint64_t* row = g.row_words(flip);
        int weight = 0;
        for (int w = 0; w < wpr; ++w) {
            current[w] ^= row[w];
            weight += std::popcount(current[w]);
        }
        ++counts[weight];
    }

    WeightEnumerator out;
    out.n = g.n();
    out.k = g.k();
    for (int d = 1; d <= g.n(); ++d)
        if (counts[d] > 0) out.spectrum[d] = counts[d];
    return out;
}

GeneratorMatrix canned_code(const std::string& name) {
    if (name == "hamming_7_4")
        return {4, 7, {"1000011", "0100101", "0010110", "0001111"}};
    if (name == "ext_hamming_8_4")
        return {4, 8, {"10000111", "01001011", "00101101", "00011110"}};
    if (name == "hamming_15_11")
        // cyclic, g(x) = x^4 + x + 1
        return {11, 15, cyclic_rows("11001", 15, 11)};
    if (name == "golay_23_12")
        // cyclic, g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
        return {12, 23, cyclic_rows("101011100011", 23, 12)};

    auto parse_suffix = [&](const std::string& prefix) -> int {
        if (name.rfind(prefix, 0) != 0) return -1;
        const std::string suffix = name.substr(prefix.size());
        if (suffix.empty() ||
            suffix.find_first_not_of("0123456789") != std::string::npos)
            return -1;
        return std::stoi(suffix);
    };

    if (int n = parse_suffix("repetition_"); n >= 1)
        return {1, n, {std::string(n, '1')}};
    if (int n = parse_suffix("spc_"); n >= 2) {
        std::vector<std::string> rows(n - 1, std::string(n, '0'));
        for (int i = 0; i + 1 < n; ++i) {
            rows[i][i] = '1';
            rows[i][n - 1] = '1';
        }
        return {n - 1, n, rows};
    }
    throw std::invalid_argument("canned_code: unknown code name '" + name + "'");
}

std::vector<double> bpsk_modulate(const std::vector<int>& codeword) {
    std::vector<double> s(codeword.size());
    for (std::size_t t = 0; t < codeword.size(); ++t)
        s[t] = 1.0 - 2.0 * codeword[t];
    return s;
}

GeneratorMatrix parse_generator_matrix(std::istream& in) {
    int k = 0, n = 0;
    if (!(in >> k >> n))
        throw std::invalid_argument(
            "generator matrix: expected header line \"k n\"");
    if (k < 1 || n < k)
        throw std::invalid_argument("generator matrix: need 1 <= k <= n");
    std::vector<std::string> rows;
    rows.reserve(k);
    std::string line;
    while (static_cast<int>(rows.size()) < k && (in >> line))
        rows.push_back(line);
    if (static_cast<int>(rows.size()) != k)
        throw std::invalid_argument("generator matrix: fewer than k rows");
    return {k, n, rows};
}

WeightEnumerator parse_weight_enumerator_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("weight enumerator JSON: ") +
                                    e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("spectrum"))
        throw std::invalid_argument(
            "weight enumerator JSON: need object with \"n\" and \"spectrum\"");
    WeightEnumerator w;
    w.n = j.at("n").get<int>();
    if (w.n < 1) throw std::invalid_argument("weight enumerator JSON: n < 1");
    if (j.contains("k") && !j.at("k").is_null()) w.k = j.at("k").get<int>();
    for (const auto& [key, value] : j.at("spectrum").items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (const std::exception&) {
            throw std::invalid_argument(
                "weight enumerator JSON: spectrum key not an integer");
        }
        if (d < 1 || d > w.n)
            throw std::invalid_argument(
                "weight enumerator JSON: weight outside 1..n");
        std::uint64_t count = 0;
        if (value.is_number_unsigned()) {
            count = value.get<std::uint64_t>();
        } else if (value.is_number_integer()) {
            const auto v = value.get<std::int64_t>();
            if (v < 0)
                throw std::invalid_argument(
                    "weight enumerator JSON: negative A_d");
            count = static_cast<std::uint64_t>(v);
        } else if (value.is_number_float()) {
            // scientific notation is fine as long as the count is an
            // integer that fits 64 bits
            const double v = value.get<double>();
            if (!(v >= 0.0) || v != std::floor(v) || v >= 1.8446744073709552e19)
                throw std::invalid_argument(
                    "weight enumerator JSON: A_d must be a nonnegative "
                    "integer fitting 64 bits");
            count = static_cast<std::uint64_t>(v);
        } else {
            throw std::invalid_argument(
                "weight enumerator JSON: A_d must be a number");
        }
        if (count > 0) w.spectrum[d] = count;
    }
    if (w.spectrum.empty())
        throw std::invalid_argument("weight enumerator JSON: empty spectrum");
    return w;
}

std::string weight_enumerator_to_json(const WeightEnumerator& w) {
    nlohmann::ordered_json j;
    j["n"] = w.n;
    j["k"] = w.k ? nlohmann::ordered_json(*w.k) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json spec = nlohmann::ordered_json::object();
    for (const auto& [d, a] : w.spectrum)
        if (a > 0) spec[std::to_string(d)] = a;
    j["spectrum"] = spec;
    return j.dump();
}

}  // namespace gfbt
