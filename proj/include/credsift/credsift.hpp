#pragma once

#include "credsift/bounded_queue.hpp"
#include "credsift/classifier.hpp"
#include "credsift/config.hpp"
#include "credsift/dedup.hpp"
#include "credsift/errors.hpp"
#include "credsift/features.hpp"
#include "credsift/geostats.hpp"
#include "credsift/ingest.hpp"
#include "credsift/model.hpp"
#include "credsift/monitor.hpp"
#include "credsift/pipeline.hpp"
#include "credsift/record.hpp"
#include "credsift/scoring.hpp"
#include "credsift/sentiment.hpp"
#include "credsift/simtext.hpp"
#include "credsift/store.hpp"
#include "credsift/synthetic.hpp"
#include "credsift/text.hpp"
