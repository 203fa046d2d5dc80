#include "arena/empirical.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "arena/metrics.hpp"
#include "arena/trace_io.hpp"

namespace arena {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
        static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 +
           static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe =
        (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yr + (m <= 2));
}

[[noreturn]] void row_error(std::size_t line, const std::string& field,
                            const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line << ", field " << field << ": " << what;
    throw std::invalid_argument(msg.str());
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::int64_t parse_nonneg_int(const std::string& text, std::size_t line,
                              const char* field) {
    if (text.empty()) row_error(line, field, "empty value");
    std::size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(text, &pos);
    } catch (const std::exception&) {
        row_error(line, field, "not an integer: '" + text + "'");
    }
    if (pos != text.size())
        row_error(line, field, "trailing characters: '" + text + "'");
    if (value < 0) row_error(line, field, "negative value: '" + text + "'");
    return value;
}

}  // namespace

std::int64_t parse_utc_hour(const std::string& text) {
    int y, mo, d, h, mi, s;
    char z;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d,
                    &h, &mi, &s, &z) != 7 ||
        z != 'Z')
        throw std::invalid_argument("timestamp not ISO 8601 UTC: '" + text +
                                    "'");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23)
        throw std::invalid_argument("timestamp out of range: '" + text + "'");
    if (mi != 0 || s != 0)
        throw std::invalid_argument("timestamp not truncated to the hour: '" +
                                    text + "'");
    return days_from_civil(y, mo, d) * 24 + h;
}

std::string format_utc_hour(std::int64_t hours_since_epoch) {
    std::int64_t days = hours_since_epoch / 24;
    int hour = static_cast<int>(hours_since_epoch % 24);
    if (hour < 0) {
        hour += 24;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00:00Z", y, m, d,
                  hour);
    return buf;
}

std::int64_t VideoSeries::first_week_views() const {
    std::int64_t total = 0;
    const std::size_t limit =
        std::min<std::size_t>(hourly_views.size(), kFirstWeekHours);
    for (std::size_t h = 0; h < limit; ++h) total += hourly_views[h];
    return total;
}

std::vector<ChannelDataset> load_dataset(std::istream& input) {
    std::string line;
    if (!std::getline(input, line))
        throw std::invalid_argument("empty input: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "channel_id,video_id,published_at,t_hour,views")
        throw std::invalid_argument(
            "bad header, expected "
            "'channel_id,video_id,published_at,t_hour,views'");

    struct PendingVideo {
        std::int64_t published_hour = 0;
        std::map<std::int64_t, std::int64_t> views;  // t_hour -> views
    };
    std::map<std::string, std::map<std::string, PendingVideo>> channels;
    std::optional<std::int64_t> window_start, window_end;

    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 5)
            row_error(line_no, "row",
                      "expected 5 fields, got " + std::to_string(fields.size()));
        const std::string& channel_id = fields[0];
        const std::string& video_id = fields[1];
        if (channel_id.empty()) row_error(line_no, "channel_id", "empty value");
        if (video_id.empty()) row_error(line_no, "video_id", "empty value");
        std::int64_t published = 0;
        try {
            published = parse_utc_hour(fields[2]);
        } catch (const std::invalid_argument& e) {
            row_error(line_no, "published_at", e.what());
        }
        const std::int64_t t_hour =
            parse_nonneg_int(fields[3], line_no, "t_hour");
        const std::int64_t views =
            parse_nonneg_int(fields[4], line_no, "views");

        PendingVideo& video = channels[channel_id][video_id];
        if (video.views.empty()) {
            video.published_hour = published;
        } else if (video.published_hour != published) {
            row_error(line_no, "published_at",
                      "conflicts with earlier rows for video '" + video_id +
                          "'");
        }
        if (!video.views.emplace(t_hour, views).second)
            row_error(line_no, "t_hour",
                      "duplicate hour " + std::to_string(t_hour) +
                          " for video '" + video_id + "'");
        const std::int64_t end = published + t_hour + 1;
        if (!window_start || published < *window_start)
            window_start = published;
        if (!window_end || end > *window_end) window_end = end;
    }

    std::vector<ChannelDataset> result;
    for (auto& [channel_id, videos] : channels) {
        ChannelDataset dataset;
        dataset.channel_id = channel_id;
        dataset.window_start = *window_start;
        dataset.window_end = *window_end;
        for (auto& [video_id, pending] : videos) {
            VideoSeries series;
            series.channel_id = channel_id;
            series.video_id = video_id;
            series.published_hour = pending.published_hour;
            const std::int64_t last = pending.views.rbegin()->first;
            series.hourly_views.assign(static_cast<std::size_t>(last + 1), 0);
            for (const auto& [t, v] : pending.views)
                series.hourly_views[static_cast<std::size_t>(t)] = v;
            series.observed_hours = dataset.window_end - pending.published_hour;
            dataset.videos.push_back(std::move(series));
        }
        std::stable_sort(dataset.videos.begin(), dataset.videos.end(),
                         [](const VideoSeries& a, const VideoSeries& b) {
                             if (a.published_hour != b.published_hour)
                                 return a.published_hour < b.published_hour;
                             return a.video_id < b.video_id;
                         });
        result.push_back(std::move(dataset));
    }
    return result;
}

std::optional<int> video_lifecycle_95(const VideoSeries& video) {
    const std::int64_t week_total = video.first_week_views();
    if (week_total == 0) return std::nullopt;
    const double threshold = 0.95 * static_cast<double>(week_total);
    std::int64_t cumulative = 0;
    for (int h = 0; h < kFirstWeekHours; ++h) {
        cumulative += video.views_at(h);
        if (static_cast<double>(cumulative) >= threshold) return h + 1;
    }
    return kFirstWeekHours;
}

std::optional<PeakShare> peak_hour_share(const VideoSeries& video,
                                         const ChannelDataset& channel) {
    if (video.first_week_views() == 0) return std::nullopt;
    int peak = 0;
    std::int64_t best = -1;
    for (int h = 0; h < kFirstWeekHours; ++h) {
        const std::int64_t v = video.views_at(h);
        if (v > best) {
            best = v;
            peak = h;
        }
    }
    // Channel attention is simultaneous competition: compare against every
    // channel video's views in the same wall-clock hour.
    const std::int64_t wall_clock = video.published_hour + peak;
    std::int64_t channel_total = 0;
    for (const VideoSeries& other : channel.videos)
        channel_total += other.views_at(wall_clock - other.published_hour);
    return PeakShare{peak, static_cast<double>(best) /
                               static_cast<double>(channel_total)};
}

double gini_hourly(const VideoSeries& video) {
    std::vector<double> week(kFirstWeekHours, 0.0);
    for (int h = 0; h < kFirstWeekHours; ++h)
        week[static_cast<std::size_t>(h)] =
            static_cast<double>(video.views_at(h));
    return gini(week);
}

TemporalProfile average_temporal_profile(const ChannelDataset& channel) {
    TemporalProfile profile;
    for (const VideoSeries& video : channel.videos) {
        const std::int64_t week_total = video.first_week_views();
        if (week_total == 0) continue;
        for (int h = 0; h < kProfileHours; ++h)
            profile.mean_share[static_cast<std::size_t>(h)] +=
                static_cast<double>(video.views_at(h)) /
                static_cast<double>(week_total);
        ++profile.videos;
    }
    if (profile.videos == 0)
        throw std::invalid_argument("channel '" + channel.channel_id +
                                    "' has no video with first-week views");
    for (double& x : profile.mean_share) x /= profile.videos;
    return profile;
}

VideoMetrics video_metrics(const VideoSeries& video,
                           const ChannelDataset& channel) {
    VideoMetrics m;
    m.channel_id = video.channel_id;
    m.video_id = video.video_id;
    m.first_week_views = video.first_week_views();
    m.gini_hourly = gini_hourly(video);
    // Videos not observed for a full week would be censored; keep their
    // lifecycle undefined rather than biased short.
    if (video.observed_hours >= kFirstWeekHours)
        m.lifecycle_hours = video_lifecycle_95(video);
    if (auto peak = peak_hour_share(video, channel)) {
        m.peak_hour = peak->peak_hour;
        m.peak_hour_share = peak->share;
    }
    return m;
}

ChannelSummary channel_summary(const ChannelDataset& channel) {
    ChannelSummary s;
    s.channel_id = channel.channel_id;
    s.videos = static_cast<int>(channel.videos.size());
    double lifecycle_total = 0.0;
    long lifecycle_count = 0;
    double gini_total = 0.0;
    for (const VideoSeries& video : channel.videos) {
        for (std::int64_t v : video.hourly_views) s.total_views += v;
        gini_total += gini_hourly(video);
        if (video.observed_hours >= kFirstWeekHours) {
            if (auto lc = video_lifecycle_95(video)) {
                lifecycle_total += *lc;
                ++lifecycle_count;
            }
        }
    }
    if (lifecycle_count > 0)
        s.mean_lifecycle_hours = lifecycle_total / lifecycle_count;
    if (s.videos > 0) s.mean_gini = gini_total / s.videos;
    return s;
}

void write_video_metrics_csv(const std::vector<ChannelDataset>& channels,
                             std::ostream& out) {
    out << "channel_id,video_id,lifecycle_hours,peak_hour,peak_hour_share,"
           "gini_hourly,first_week_views\n";
    for (const ChannelDataset& channel : channels) {
        for (const VideoSeries& video : channel.videos) {
            const VideoMetrics m = video_metrics(video, channel);
            out << m.channel_id << ',' << m.video_id << ',';
            if (m.lifecycle_hours) out << *m.lifecycle_hours;
            out << ',';
            if (m.peak_hour) out << *m.peak_hour;
            out << ',';
            if (m.peak_hour_share) out << format_real(*m.peak_hour_share);
            out << ',' << format_real(m.gini_hourly) << ','
                << m.first_week_views << '\n';
        }
    }
}

void write_channel_summary_csv(const std::vector<ChannelDataset>& channels,
                               std::ostream& out) {
    out << "channel_id,mean_lifecycle_hours,mean_gini_hourly,videos,"
           "total_views\n";
    for (const ChannelDataset& channel : channels) {
        const ChannelSummary s = channel_summary(channel);
        out << s.channel_id << ',';
        if (s.mean_lifecycle_hours) out << format_real(*s.mean_lifecycle_hours);
        out << ',' << format_real(s.mean_gini) << ',' << s.videos << ','
            << s.total_views << '\n';
    }
}

void write_profile_csv(const std::vector<ChannelDataset>& channels,
                       std::ostream& out) {
    out << "channel_id,hour,mean_share,videos\n";
    for (const ChannelDataset& channel : channels) {
        TemporalProfile profile;
        try {
            profile = average_temporal_profile(channel);
        } catch (const std::invalid_argument&) {
            continue;  // channel with no qualifying videos gets no rows
        }
        for (int h = 0; h < kProfileHours; ++h) {
            out << channel.channel_id << ',' << h << ','
                << format_real(profile.mean_share[static_cast<std::size_t>(h)])
                << ',' << profile.videos << '\n';
        }
    }
}

void write_dataset_csv(const std::vector<ChannelDataset>& channels,
                       std::ostream& out) {
    out << "channel_id,video_id,published_at,t_hour,views\n";
    for (const ChannelDataset& channel : channels) {
        for (const VideoSeries& video : channel.videos) {
            for (std::size_t h = 0; h < video.hourly_views.size(); ++h) {
                out << channel.channel_id << ',' << video.video_id << ','
                    << format_utc_hour(video.published_hour) << ',' << h << ','
                    << video.hourly_views[h] << '\n';
            }
        }
    }
}

}  // namespace arena
