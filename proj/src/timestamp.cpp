#include "tclflex/timestamp.hpp"

#include <charconv>
#include <cstdio>

namespace tclflex {

namespace {

bool read_int(std::string_view s, std::size_t pos, std::size_t len, int& out)
{
    if (pos + len > s.size())
        return false;
    const char* first = s.data() + pos;
    const char* last = first + len;
    auto [p, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && p == last;
}

} // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text)
{
    using namespace std::chrono;
    // 2013-06-01T00:00:00Z
    if (text.size() < 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':'
        || text[16] != ':')
        return std::nullopt;
    const std::string_view zone = text.substr(19);
    if (zone != "Z" && zone != "+00:00")
        return std::nullopt;

    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!read_int(text, 0, 4, y) || !read_int(text, 5, 2, mo) || !read_int(text, 8, 2, d)
        || !read_int(text, 11, 2, h) || !read_int(text, 14, 2, mi) || !read_int(text, 17, 2, s))
        return std::nullopt;
    if (h > 23 || mi > 59 || s > 59)
        return std::nullopt;

    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        return std::nullopt;
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_timestamp(Timestamp ts)
{
    using namespace std::chrono;
    const auto day_point = floor<days>(ts);
    const year_month_day ymd{day_point};
    const hh_mm_ss hms{ts - day_point};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long long>(hms.seconds().count()));
    return buf;
}

int utc_hour(Timestamp ts)
{
    using namespace std::chrono;
    const auto day_point = floor<days>(ts);
    return static_cast<int>(duration_cast<hours>(ts - day_point).count());
}

} // namespace tclflex
