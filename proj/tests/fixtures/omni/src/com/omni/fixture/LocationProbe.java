package com.omni.fixture;

import android.location.Location;
import android.location.LocationListener;

public class LocationProbe implements LocationListener {

    public double lastLatitude;

    @Override
    public void onLocationChanged(Location location) {
        lastLatitude = location.getLatitude();
    }
}
