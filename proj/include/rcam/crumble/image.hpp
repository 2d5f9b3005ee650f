#pragma once

#include <span>
#include <vector>

#include "rcam/crumble/store.hpp"

namespace rcam::crumble {

struct EntryImage;

/// Deep, store-independent value of a bite: two images are equal iff the bites are
/// identical down to entry ids and binder identities.
struct BiteImage {
    enum class Kind { app, lam, lamid };

    Kind kind = Kind::app;
    Name left;                     // app
    Name right;                    // app; the returned name for lamid
    BoundVar param;                // lam, lamid
    std::vector<BiteImage> head;   // lam: exactly one element
    std::vector<EntryImage> tail;  // lam

    friend bool operator==(const BiteImage&, const BiteImage&);
};

struct EntryImage {
    EntryId id;
    BiteImage bite;

    friend bool operator==(const EntryImage&, const EntryImage&);
};

BiteImage image_of(const Store& store, const Bite& b);
std::vector<EntryImage> image_of(const Store& store, std::span<const EntryId> ids);

}  // namespace rcam::crumble
