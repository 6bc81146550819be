#include "sadic/suffix_array.hpp"

#include <algorithm>
#include <numeric>

namespace sadic {

std::vector<int32_t> build_suffix_array(const std::vector<int32_t>& s) {
    int n = (int)s.size();
    std::vector<int32_t> sa((size_t)n), rank((size_t)n), tmp((size_t)n), cnt;
    if (n == 0) return sa;

    // initial ranks by symbol value
    {
        int32_t mx = *std::max_element(s.begin(), s.end());
        cnt.assign(size_t(mx) + 2, 0);
        for (int32_t v : s) cnt[size_t(v) + 1]++;
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        std::vector<int32_t> cc = cnt;
        for (int i = 0; i < n; ++i) sa[size_t(cc[size_t(s[size_t(i)])]++)] = i;
        int r = 0;
        rank[size_t(sa[0])] = 0;
        for (int i = 1; i < n; ++i) {
            if (s[size_t(sa[size_t(i)])] != s[size_t(sa[size_t(i) - 1])]) ++r;
            rank[size_t(sa[size_t(i)])] = r;
        }
    }

    std::vector<int32_t> sa2((size_t)n);
    for (int len = 1; len < n; len <<= 1) {
        // sort by second key: suffixes starting at >= n-len have empty second
        // key and come first
        int p = 0;
        for (int i = n - len; i < n; ++i) sa2[size_t(p++)] = i;
        for (int i = 0; i < n; ++i)
            if (sa[size_t(i)] >= len) sa2[size_t(p++)] = sa[size_t(i)] - len;
        // stable radix pass by first key
        int32_t classes = rank[size_t(sa[size_t(n) - 1])] + 1;
        cnt.assign(size_t(classes) + 1, 0);
        for (int i = 0; i < n; ++i) cnt[size_t(rank[size_t(i)]) + 1]++;
        for (size_t i = 1; i < cnt.size(); ++i) cnt[i] += cnt[i - 1];
        for (int i = 0; i < n; ++i) sa[size_t(cnt[size_t(rank[size_t(sa2[size_t(i)])])]++)] = sa2[size_t(i)];
        // recompute ranks
        tmp[size_t(sa[0])] = 0;
        int r = 0;
        for (int i = 1; i < n; ++i) {
            int a = sa[size_t(i)], b = sa[size_t(i) - 1];
            bool same = rank[size_t(a)] == rank[size_t(b)];
            if (same) {
                int32_t ra = a + len < n ? rank[size_t(a) + size_t(len)] : -1;
                int32_t rb = b + len < n ? rank[size_t(b) + size_t(len)] : -1;
                same = ra == rb;
            }
            if (!same) ++r;
            tmp[size_t(a)] = r;
        }
        rank.swap(tmp);
        if (r == n - 1) break;
    }
    return sa;
}

std::vector<int32_t> build_lcp(const std::vector<int32_t>& s, const std::vector<int32_t>& sa) {
    int n = (int)s.size();
    std::vector<int32_t> rank((size_t)n), lcp((size_t)n, 0);
    for (int i = 0; i < n; ++i) rank[size_t(sa[size_t(i)])] = i;
    int h = 0;
    for (int i = 0; i < n; ++i) {
        if (rank[size_t(i)] == 0) { h = 0; continue; }
        int j = sa[size_t(rank[size_t(i)]) - 1];
        if (h > 0) --h;
        while (i + h < n && j + h < n && s[size_t(i) + size_t(h)] == s[size_t(j) + size_t(h)]) ++h;
        lcp[size_t(rank[size_t(i)])] = h;
    }
    return lcp;
}

}  // namespace sadic
