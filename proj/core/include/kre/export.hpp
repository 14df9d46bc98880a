#pragma once

#include <span>
#include <string>

#include "kre/analytics.hpp"
#include "kre/timeline.hpp"

namespace kre {

/// MatrixView JSON (compact, keys in fixed order):
///   {"relation_kind", "time_range": {"start", "end"}, "record_count",
///    "keywords": [{"text", "kinds", "frequency",
///                  "sentiment": {"positive", "neutral", "negative"}, "avg_confidence"}],
///    "cells": [{"i", "j", "value", "pct", "tweet_count"}]}
/// Co-occurrence values are written as integers.
std::string view_json(const RelationMatrix& view);

/// Dense square matrix: a header row of keywords, then one row per keyword.
/// The diagonal is empty and absent cells are 0.
std::string view_csv(const RelationMatrix& view);

/// JSON array of MatrixView objects in bucket order, each with an extra
/// "bucket": {"index", "mode", "window": {"start", "end"}} member.
std::string timeline_json(std::span<const TimelineView> views);

}  // namespace kre
