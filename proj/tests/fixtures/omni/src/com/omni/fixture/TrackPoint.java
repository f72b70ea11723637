package com.omni.fixture;

import android.os.Parcel;
import android.os.Parcelable;

public class TrackPoint implements Parcelable {

    private final double latitude;
    private final double longitude;

    public TrackPoint(double latitude, double longitude) {
        this.latitude = latitude;
        this.longitude = longitude;
    }

    @Override
    public int describeContents() {
        return 0;
    }

    @Override
    public void writeToParcel(Parcel dest, int flags) {
        dest.writeDouble(latitude);
        dest.writeDouble(longitude);
    }
}
