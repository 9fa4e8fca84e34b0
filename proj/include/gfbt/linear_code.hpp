#ifndef GFBT_LINEAR_CODE_HPP
#define GFBT_LINEAR_CODE_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gfbt {

// k x n binary generator matrix, rows packed LSB-first into 64-bit words.
// Construction enforces 1 <= k <= n and full row rank over GF(2).
class GeneratorMatrix {
public:
    // rows[i] holds row i as characters '0'/'1', length n each.
    GeneratorMatrix(int k, int n, const std::vector<std::string>& rows);

    int k() const { return k_; }
    int n() const { return n_; }
    int words_per_row() const { return wpr_; }
    bool bit(int row, int col) const {
        return (words_[static_cast<std::size_t>(row) * wpr_ + col / 64] >>
                (col % 64)) & 1u;
    }
    const std::uint64_t* row_words(int row) const {
        return words_.data() + static_cast<std::size_t>(row) * wpr_;
    }

private:
    int k_;
    int n_;
    int wpr_;
    std::vector<std::uint64_t> words_;
};

// Weight spectrum {A_d, 1 <= d <= n}; the all-zero codeword is excluded.
struct WeightEnumerator {
    int n = 0;
    std::optional<int> k;  // known when derived from a generator matrix
    std::map<int, std::uint64_t> spectrum;  // only nonzero counts stored

    int d_min() const;                   // smallest d with A_d > 0
    std::uint64_t total_codewords() const;  // sum of A_d
};

// Exact spectrum by iterating all 2^k messages in Gray-code order.
// Throws std::invalid_argument for k > 26 (enumeration budget).
WeightEnumerator weight_enumerator(const GeneratorMatrix& g);

// Standard generators stored as literal data. Accepted names:
// hamming_7_4, ext_hamming_8_4, hamming_15_11, golay_23_12,
// repetition_N, spc_N. Throws std::invalid_argument for unknown names.
GeneratorMatrix canned_code(const std::string& name);

// BPSK map s_t = 1 - 2 c_t (0 -> +1, 1 -> -1).
std::vector<double> bpsk_modulate(const std::vector<int>& codeword);

// Generator matrix file format: first line "k n", then k lines of n
// space-free 0/1 characters. Throws std::invalid_argument on parse errors.
GeneratorMatrix parse_generator_matrix(std::istream& in);

// Weight enumerator JSON: {"n": int, "k": int|null, "spectrum": {"d": A_d}}.
// Zero-count entries are omitted on output and rejected-as-noise on input.
WeightEnumerator parse_weight_enumerator_json(std::istream& in);
std::string weight_enumerator_to_json(const WeightEnumerator& w);

}  // namespace gfbt

#endif
